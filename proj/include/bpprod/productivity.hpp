#pragma once

#include <string>
#include <string_view>

namespace bpprod {

/// improved: tau_n >= tau_a (delta_p >= 1). degraded: tau_n < tau_a.
enum class Regime { improved, degraded };

std::string_view to_string(Regime regime);

/// P = Y / T. Throws ZeroLabour for T <= 0.
double productivity(double output, double labour);

/// delta_p = tau_n / tau_a under constant output. Throws NonPositiveTime.
double delta_p_from_times(double tau_n, double tau_a);

struct PsiResult {
    double psi = 0.0;
    Regime regime = Regime::improved;
};

/// Execution-time change rate: 1 - 1/delta_p when improved, 1/delta_p - 1 when
/// degraded; delta_p == 1 counts as improved. Throws NonPositiveDeltaP.
PsiResult psi_from_delta_p(double delta_p);

/// tau_a = (1 - psi) tau_n when improved, (1 + psi) tau_n when degraded.
/// Throws NonPositiveTime, InvalidArgument (psi < 0) and PsiOutOfRange (improved, psi >= 1).
double tau_a_from_psi(double tau_n, double psi, Regime regime);

struct PsiDecomposition {
    double gamma = 0.0;  // localized automation gain, kappa * psi
    double theta = 0.0;  // integration impact on the rest of the process
};

/// gamma = kappa psi; theta = psi - gamma (improved) or psi + gamma (degraded).
PsiDecomposition decompose_psi(double psi, double kappa, Regime regime);

/// Promised improvement of the automated task: max(0, 1 - after/before).
double kappa_from_task(double before_task_mean, double after_task_mean);

/// Cobb-Douglas inputs, Y = (L + A X)^alpha H^(1 - alpha); times in seconds.
struct ProductionInputs {
    double low_before = 0.0;      // l_n
    double low_after = 0.0;       // l_a
    double high_before = 0.0;     // h_n
    double high_after = 0.0;      // h_a
    double automated_after = 0.0; // x_a
    double substitution = 0.0;    // a_a
    double alpha = 0.5;
};

inline constexpr double kDefaultAlpha = 0.5;

/// Inputs satisfying the closure h_a = h_n, a_a = (l_n - l_a) / x_a.
ProductionInputs closed_inputs(double low_before, double low_after, double high, double automated_after,
                               double alpha);

/// delta_p = (tau_n/tau_a) ((l_a + a_a x_a)/l_n)^alpha (h_a/h_n)^(1-alpha).
/// Throws NonPositiveTime, NonPositiveBase, InvalidArgument (alpha outside (0,1)).
double delta_p_full(double tau_n, double tau_a, const ProductionInputs& inputs);

struct PathMetrics {
    std::string path;
    double tau_n = 0.0;
    double tau_a = 0.0;
    double delta_p = 0.0;
    double kappa = 0.0;
    double psi = 0.0;
    double gamma = 0.0;
    double theta = 0.0;
    Regime regime = Regime::improved;
};

PathMetrics compute_path_metrics(std::string path, double tau_n, double tau_a, double kappa);

}  // namespace bpprod
