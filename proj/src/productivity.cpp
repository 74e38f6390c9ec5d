#include "bpprod/productivity.hpp"

#include "bpprod/error.hpp"

#include <algorithm>
#include <cmath>

namespace bpprod {

std::string_view to_string(Regime regime)
{
    return regime == Regime::improved ? "improved" : "degraded";
}

double productivity(double output, double labour)
{
    if (!(labour > 0.0)) {
        fail(ErrorKind::ZeroLabour, "labour input must be positive");
    }
    return output / labour;
}

double delta_p_from_times(double tau_n, double tau_a)
{
    if (!(tau_n > 0.0) || !(tau_a > 0.0)) {
        fail(ErrorKind::NonPositiveTime, "execution times must be positive");
    }
    return tau_n / tau_a;
}

PsiResult psi_from_delta_p(double delta_p)
{
    if (!(delta_p > 0.0)) {
        fail(ErrorKind::NonPositiveDeltaP, "delta_p must be positive");
    }
    if (delta_p >= 1.0) {
        return {1.0 - 1.0 / delta_p, Regime::improved};
    }
    return {1.0 / delta_p - 1.0, Regime::degraded};
}

double tau_a_from_psi(double tau_n, double psi, Regime regime)
{
    if (!(tau_n > 0.0)) {
        fail(ErrorKind::NonPositiveTime, "tau_n must be positive");
    }
    if (!(psi >= 0.0)) {
        fail(ErrorKind::InvalidArgument, "psi must be non-negative");
    }
    if (regime == Regime::improved) {
        if (psi >= 1.0) {
            fail(ErrorKind::PsiOutOfRange, "psi >= 1 in the improved regime would make tau_a non-positive");
        }
        return (1.0 - psi) * tau_n;
    }
    return (1.0 + psi) * tau_n;
}

PsiDecomposition decompose_psi(double psi, double kappa, Regime regime)
{
    if (!(psi >= 0.0) || !(kappa >= 0.0)) {
        fail(ErrorKind::InvalidArgument, "psi and kappa must be non-negative");
    }
    const double gamma = kappa * psi;
    const double theta = regime == Regime::improved ? psi - gamma : psi + gamma;
    return {gamma, theta};
}

double kappa_from_task(double before_task_mean, double after_task_mean)
{
    if (!(before_task_mean > 0.0)) {
        fail(ErrorKind::NonPositiveTime, "pre-automation task mean must be positive");
    }
    return std::max(0.0, 1.0 - after_task_mean / before_task_mean);
}

ProductionInputs closed_inputs(double low_before, double low_after, double high, double automated_after, double alpha)
{
    if (!(automated_after > 0.0)) {
        fail(ErrorKind::ZeroAutomatedHours, "closure needs positive automated time");
    }
    return {low_before, low_after, high, high, automated_after, (low_before - low_after) / automated_after, alpha};
}

double delta_p_full(double tau_n, double tau_a, const ProductionInputs& in)
{
    if (!(in.alpha > 0.0 && in.alpha < 1.0)) {
        fail(ErrorKind::InvalidArgument, "alpha must lie strictly inside (0, 1)");
    }
    const double ratio = delta_p_from_times(tau_n, tau_a);
    if (!(in.low_before > 0.0) || !(in.high_before > 0.0)) {
        fail(ErrorKind::NonPositiveBase, "baseline low- and high-skilled times must be positive");
    }
    if (in.high_after < 0.0) {
        fail(ErrorKind::NonPositiveBase, "high-skilled time after the intervention is negative");
    }
    const double labour = std::fma(in.substitution, in.automated_after, in.low_after);
    if (!(labour > 0.0)) {
        fail(ErrorKind::NonPositiveBase, "l_a + a_a x_a must be positive for a fractional alpha");
    }
    return ratio * std::pow(labour / in.low_before, in.alpha) *
           std::pow(in.high_after / in.high_before, 1.0 - in.alpha);
}

PathMetrics compute_path_metrics(std::string path, double tau_n, double tau_a, double kappa)
{
    PathMetrics m;
    m.path = std::move(path);
    m.tau_n = tau_n;
    m.tau_a = tau_a;
    m.kappa = kappa;
    m.delta_p = delta_p_from_times(tau_n, tau_a);
    const auto [psi, regime] = psi_from_delta_p(m.delta_p);
    m.psi = psi;
    m.regime = regime;
    const auto [gamma, theta] = decompose_psi(psi, kappa, regime);
    m.gamma = gamma;
    m.theta = theta;
    return m;
}

}  // namespace bpprod
