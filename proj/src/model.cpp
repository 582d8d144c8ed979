#include "mlz/model.hpp"

#include <cmath>
#include <stdexcept>

namespace mlz {

std::vector<double> DiabaticModel::intercepts() const { return intercepts(tau); }

std::vector<double> DiabaticModel::intercepts(double tau_override) const {
    std::vector<double> eps(n);
    for (int k = 0; k < n; ++k) eps[k] = tau_slope[k] * tau_override + coupling(k, k);
    return eps;
}

void DiabaticModel::validate() const {
    if (n < 1) throw std::invalid_argument("model needs at least one state");
    if (static_cast<int>(slope.size()) != n || static_cast<int>(tau_slope.size()) != n)
        throw std::invalid_argument("slope vectors must have length n");
    if (coupling.rows() != n || coupling.cols() != n)
        throw std::invalid_argument("coupling must be n x n");
    for (double x : slope)
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite slope entry");
    for (double x : tau_slope)
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite tau_slope entry");
    for (double x : coupling.data())
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite coupling entry");
    if (!coupling.is_symmetric(1e-12)) throw std::invalid_argument("coupling must be symmetric");
    if (!std::isfinite(tau)) throw std::invalid_argument("non-finite tau");
}

Matrix assemble_H(const DiabaticModel& model, double t) { return assemble_H(model, t, model.tau); }

Matrix assemble_H(const DiabaticModel& model, double t, double tau_override) {
    Matrix h = model.coupling;
    for (int k = 0; k < model.n; ++k) h(k, k) += model.slope[k] * t + model.tau_slope[k] * tau_override;
    return h;
}

Matrix assemble_Hprime(const DiabaticModel& model, const TtauPartner& partner, double t) {
    return assemble_Hprime(model, partner, t, model.tau);
}

Matrix assemble_Hprime(const DiabaticModel& model, const TtauPartner& partner, double t, double tau_override) {
    if (tau_override == 0.0) throw std::invalid_argument("partner has a pole at tau = 0");
    Matrix h = partner.a1;
    for (size_t i = 0; i < h.data().size(); ++i) h.data()[i] += partner.c.data()[i] / tau_override;
    for (int k = 0; k < model.n; ++k) h(k, k) += partner.b11[k] * tau_override + model.tau_slope[k] * t;
    return h;
}

Matrix TtauOperator::assemble(double t, double tau) const {
    if (tau == 0.0) throw std::invalid_argument("operator has a pole at tau = 0");
    Matrix h = const_part;
    for (size_t i = 0; i < h.data().size(); ++i)
        h.data()[i] += t * t_part.data()[i] + tau * tau_part.data()[i] + invtau_part.data()[i] / tau;
    return h;
}

TtauOperator& TtauOperator::add_scaled(const TtauOperator& other, double factor) {
    for (size_t i = 0; i < t_part.data().size(); ++i) {
        t_part.data()[i] += factor * other.t_part.data()[i];
        tau_part.data()[i] += factor * other.tau_part.data()[i];
        const_part.data()[i] += factor * other.const_part.data()[i];
        invtau_part.data()[i] += factor * other.invtau_part.data()[i];
    }
    return *this;
}

} // namespace mlz
