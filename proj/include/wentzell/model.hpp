#pragma once

#include <string>

namespace wentzell {

enum class Side { AtZero, AtOne };

enum class Mode { Reflecting, Absorbing, Elastic, Sticky, General, TrapKill };

// Absorbing has two readings: the path is stopped at 0 (mass stays as an atom)
// or killed at H0 (mass is lost).
enum class AbsorbPolicy { Stop, Kill };

struct WentzellTriple {
    double a0 = 0.0;
    double b0 = 1.0;
    double c0 = 0.0;
    Side side = Side::AtZero;
};

struct BoundaryModel {
    WentzellTriple triple;
    Mode mode = Mode::Reflecting;
    double beta = 0.0;
    double gamma = 0.0;
    AbsorbPolicy absorb = AbsorbPolicy::Stop;

    static BoundaryModel reflecting(Side side = Side::AtZero);
    static BoundaryModel absorbing(AbsorbPolicy policy = AbsorbPolicy::Stop, Side side = Side::AtZero);
    static BoundaryModel elastic(double beta, Side side = Side::AtZero);
    static BoundaryModel sticky(double gamma, Side side = Side::AtZero);
    static BoundaryModel general(double beta, double gamma, Side side = Side::AtZero);
    static BoundaryModel trap_kill(double beta, Side side = Side::AtZero);

    // Killing on the local-time clock at rate beta (Elastic, General).
    bool kills_on_local_time() const { return mode == Mode::Elastic || mode == Mode::General; }
};

// Coefficients below this (after normalization) count as zero.
inline constexpr double kZeroCoefficient = 1e-12;

BoundaryModel normalize_wentzell(double a0, double b0, double c0, Side side = Side::AtZero);

WentzellTriple to_wentzell(const BoundaryModel& model);

// a0 f0 - b0 f'(0+) + (c0/2) f''(0+) at 0; the first-derivative sign flips at 1.
double wentzell_residual(const BoundaryModel& model, double f0, double df0, double ddf0);

std::string mode_name(Mode mode);

// Short human-readable tag such as "Sticky(gamma=1)".
std::string describe(const BoundaryModel& model);

}  // namespace wentzell
