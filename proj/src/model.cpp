#include "wentzell/model.hpp"

#include <cmath>
#include <sstream>

#include "wentzell/errors.hpp"

namespace wentzell {

namespace {

bool is_zero(double v) { return v < kZeroCoefficient; }

}  // namespace

BoundaryModel normalize_wentzell(double a0, double b0, double c0, Side side) {
    if (!(a0 >= 0.0) || !(b0 >= 0.0) || !(c0 >= 0.0)) {
        throw Error(ErrorCode::TypeMismatch, "Wentzell coefficients must be non-negative");
    }
    const double sum = a0 + b0 + c0;
    if (!(sum > 0.0)) throw Error(ErrorCode::AllZero, "a0 + b0 + c0 = 0");

    BoundaryModel m;
    m.triple = {a0 / sum, b0 / sum, c0 / sum, side};
    const bool za = is_zero(m.triple.a0);
    const bool zb = is_zero(m.triple.b0);
    const bool zc = is_zero(m.triple.c0);
    if (za) m.triple.a0 = 0.0;
    if (zb) m.triple.b0 = 0.0;
    if (zc) m.triple.c0 = 0.0;

    if (zb && zc) throw Error(ErrorCode::PureDirichlet, "(a0,b0,c0) = (1,0,0) is excluded");

    const auto& t = m.triple;
    if (zb) {
        if (za) {
            m.mode = Mode::Absorbing;
        } else {
            m.mode = Mode::TrapKill;
            m.beta = t.a0 / t.c0;
        }
    } else if (za && zc) {
        m.mode = Mode::Reflecting;
    } else if (zc) {
        m.mode = Mode::Elastic;
        m.beta = t.a0 / t.b0;
    } else if (za) {
        m.mode = Mode::Sticky;
        m.gamma = t.c0 / t.b0;
    } else {
        m.mode = Mode::General;
        m.beta = t.a0 / t.b0;
        m.gamma = t.c0 / t.b0;
    }
    return m;
}

WentzellTriple to_wentzell(const BoundaryModel& model) { return model.triple; }

double wentzell_residual(const BoundaryModel& model, double f0, double df0, double ddf0) {
    const auto& t = model.triple;
    const double sign = t.side == Side::AtZero ? -1.0 : 1.0;
    return t.a0 * f0 + sign * t.b0 * df0 + 0.5 * t.c0 * ddf0;
}

BoundaryModel BoundaryModel::reflecting(Side side) { return normalize_wentzell(0.0, 1.0, 0.0, side); }

BoundaryModel BoundaryModel::absorbing(AbsorbPolicy policy, Side side) {
    auto m = normalize_wentzell(0.0, 0.0, 1.0, side);
    m.absorb = policy;
    return m;
}

BoundaryModel BoundaryModel::elastic(double beta, Side side) {
    if (beta == 0.0) return reflecting(side);
    auto m = normalize_wentzell(beta, 1.0, 0.0, side);
    m.beta = beta;
    return m;
}

BoundaryModel BoundaryModel::sticky(double gamma, Side side) {
    if (gamma == 0.0) return reflecting(side);
    auto m = normalize_wentzell(0.0, 1.0, gamma, side);
    m.gamma = gamma;
    return m;
}

BoundaryModel BoundaryModel::general(double beta, double gamma, Side side) {
    if (beta == 0.0) return sticky(gamma, side);
    if (gamma == 0.0) return elastic(beta, side);
    auto m = normalize_wentzell(beta, 1.0, gamma, side);
    m.beta = beta;
    m.gamma = gamma;
    return m;
}

BoundaryModel BoundaryModel::trap_kill(double beta, Side side) {
    auto m = normalize_wentzell(beta, 0.0, 1.0, side);
    m.beta = beta;
    return m;
}

std::string mode_name(Mode mode) {
    switch (mode) {
        case Mode::Reflecting: return "Reflecting";
        case Mode::Absorbing: return "Absorbing";
        case Mode::Elastic: return "Elastic";
        case Mode::Sticky: return "Sticky";
        case Mode::General: return "General";
        case Mode::TrapKill: return "TrapKill";
    }
    return "?";
}

std::string describe(const BoundaryModel& model) {
    std::ostringstream os;
    os.precision(12);
    os << mode_name(model.mode);
    switch (model.mode) {
        case Mode::Elastic:
        case Mode::TrapKill: os << "(beta=" << model.beta << ")"; break;
        case Mode::Sticky: os << "(gamma=" << model.gamma << ")"; break;
        case Mode::General: os << "(beta=" << model.beta << ",gamma=" << model.gamma << ")"; break;
        case Mode::Absorbing: os << (model.absorb == AbsorbPolicy::Stop ? "(stop)" : "(kill)"); break;
        case Mode::Reflecting: break;
    }
    return os.str();
}

}  // namespace wentzell
