#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace esos {

// Monotone transform g used by the scale and location-scale lifetime families.
enum class Transform { Identity, Power, Log };

struct TransformSpec {
    Transform kind = Transform::Identity;
    double power_a = 1.0;  // exponent for Transform::Power

    double operator()(double t) const;
    double deriv(double t) const;
    double inverse(double y) const;
    // Smallest admissible time, i.e. where g reaches its lower limit.
    double lower_limit() const;
    std::string name() const;
};

enum class Family { Exponential, Scale, LocationScale };

struct ComponentBaseline {
    Family family = Family::Exponential;
    TransformSpec g;    // Identity for Exponential
    double rate = 1.0;  // lambda; pinned to 1 when unknown
    double loc = 0.0;   // mu, LocationScale only
};

// Per-component baseline lifetime distributions. Components are 1-based.
class BaselineSpec {
public:
    BaselineSpec() = default;
    explicit BaselineSpec(std::vector<ComponentBaseline> comps) : comps_(std::move(comps)) {}

    static BaselineSpec exponential(int n, double rate = 1.0);
    static BaselineSpec exponential(const std::vector<double>& rates);
    static BaselineSpec scale(int n, TransformSpec g, double rate = 1.0);
    static BaselineSpec location_scale(int n, TransformSpec g, double mu = 0.0);

    int size() const { return static_cast<int>(comps_.size()); }
    const ComponentBaseline& component(int j) const { return comps_.at(j - 1); }
    ComponentBaseline& component(int j) { return comps_.at(j - 1); }

    // ln F̄_j*(t). Throws std::domain_error for t outside the support.
    double log_survival(int j, double t) const;

    // Baseline hazard rate h_j*(t).
    double hazard(int j, double t) const;

    // ln F̄_j*(t_prev) − ln F̄_j*(t_curr) ≥ 0. A t_prev of 0 stands for the
    // start-of-life convention x_0 (which is g^{-1}(mu) for location-scale
    // and the transform's lower limit otherwise).
    double delta(int j, double t_prev, double t_curr) const;

    // The x_0 convention for component j.
    double start_time(int j) const;

    // Solves ln F̄_j*(t) = ls for t (ls ≤ 0).
    double invert_log_survival(int j, double ls) const;

private:
    std::vector<ComponentBaseline> comps_;
};

}  // namespace esos
