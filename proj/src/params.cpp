#include "trop/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace trop {

void GlobalConfig::validate() const {
    if (!(omega_eff >= 2.0 && omega_eff <= 3.0))
        throw PreconditionError("omega_eff must lie in [2, 3], got " + std::to_string(omega_eff));
    if (threads == 0) throw PreconditionError("thread budget must be at least 1");
}

namespace params {

namespace {

std::size_t clamp_round(double x, std::size_t hi) {
    if (!(x >= 1.0)) return 1;
    double r = std::round(x);
    if (r >= static_cast<double>(hi)) return std::max<std::size_t>(1, hi);
    return static_cast<std::size_t>(r);
}

}  // namespace

std::size_t bucket_size(Value bound, std::size_t n, double omega_eff) {
    double x = std::sqrt(static_cast<double>(std::max<Value>(bound, 1))) *
               std::pow(static_cast<double>(std::max<std::size_t>(n, 1)), (omega_eff - 1.0) / 2.0);
    return clamp_round(x, std::max<std::size_t>(n, 1));
}

std::size_t rho(std::size_t n, Value error_bound, double omega_eff) {
    const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
    const double w = static_cast<double>(std::max<Value>(error_bound, 1));
    if (w > std::pow(nn, 3.0 - omega_eff)) return 1;
    double r = std::ceil(std::pow(nn, (3.0 - omega_eff) / 4.0) * std::pow(w, -0.25));
    return std::clamp<std::size_t>(static_cast<std::size_t>(r), 1, std::max<std::size_t>(n, 1));
}

std::size_t rounds(std::size_t rho, std::size_t n) {
    const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(10.0 * static_cast<double>(rho) * std::log(nn))));
}

std::size_t bdd_block_size(std::size_t n, Value bound, std::size_t order, double omega_eff) {
    const double nn = static_cast<double>(std::max<std::size_t>(n, 1));
    const double mm = static_cast<double>(std::max<Value>(bound, 1));
    const double t = static_cast<double>(order);
    double base = std::pow(nn, (3.0 - omega_eff) / 2.0) * std::pow(mm, -0.5);
    return clamp_round(std::pow(base, t / (t * t + 2.0)), std::max<std::size_t>(n, 1));
}

std::size_t monotone_block_size(std::size_t n, Value m, double omega_eff) {
    const double nn = static_cast<double>(std::max<std::size_t>(n, 1));
    const double mm = static_cast<double>(std::max<Value>(m, 1));
    if (mm >= std::pow(nn, (omega_eff - 1.0) / 2.0))
        return clamp_round(std::pow(nn, (4.0 - omega_eff) / 6.0) * std::pow(mm, -1.0 / 6.0), n);
    return clamp_round(std::pow(nn, (3.0 - omega_eff) / 4.0), n);
}

Value monotone_gamma(std::size_t n, Value m, double omega_eff) {
    const double nn = static_cast<double>(std::max<std::size_t>(n, 1));
    const double mm = static_cast<double>(std::max<Value>(m, 1));
    if (mm >= std::pow(nn, (omega_eff - 1.0) / 2.0)) {
        double g = std::pow(nn, (1.0 - omega_eff) / 3.0) * std::pow(mm, 2.0 / 3.0);
        return std::max<Value>(1, static_cast<Value>(std::llround(g)));
    }
    return 1;
}

std::size_t range_mode_threshold(std::size_t n, double omega_eff) {
    return clamp_round(std::pow(static_cast<double>(std::max<std::size_t>(n, 1)),
                                (8.0 + omega_eff) / (19.0 + omega_eff)),
                       std::max<std::size_t>(n, 1));
}

std::size_t apsp_path_threshold(std::size_t n, std::size_t clusters, std::size_t dim, Value error_bound,
                                double omega_eff) {
    const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
    const double cluster_size = static_cast<double>(n) / static_cast<double>(std::max<std::size_t>(clusters, 1));
    const double delta = std::max(cluster_size, 1.0) > 1.0 ? std::log(cluster_size) / std::log(nn) : 0.0;
    const double half = static_cast<double>((dim + 1) / 2);
    const double w = static_cast<double>(std::max<Value>(error_bound, 1));
    double ell;
    if (w > std::pow(nn, 3.0 - omega_eff - 4.0 * delta / half))
        ell = std::pow(nn, (3.0 - omega_eff) / 8.0) / std::pow(w, 1.0 / 8.0);
    else
        ell = std::pow(nn, delta / (2.0 * half));
    return std::clamp<std::size_t>(clamp_round(ell, n), 2, std::max<std::size_t>(n, 2));
}

}  // namespace params
}  // namespace trop
