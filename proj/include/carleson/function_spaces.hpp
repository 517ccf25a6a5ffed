#pragma once

#include "carleson/dyadic.hpp"

#include <string>

namespace carleson {

/// Named monotone profile phi: [0,inf) -> [0,inf).
enum class PhiProfile {
    Log,       // log(1+t)
    LogLog,    // log(1+t) * log(log(e+t))
    LogLogLog, // log(1+t) * log+(log(log(10+t)))
    SoriaPhi1, // s * (1 + log+(1/s))
};

double phi_eval(PhiProfile phi, double t);
std::string phi_name(PhiProfile phi);
PhiProfile phi_from_name(const std::string& name);

/// 2^-K sum |v| * phi(|v|).
double orlicz_modular(const GridFunction& f, PhiProfile phi);

/// Modular of the decreasing rearrangement (the norm of the Proposition).
double orlicz_norm(const GridFunction& f, PhiProfile phi);

struct SoriaNorms {
    double norm = 0.0;         // ||f||_phi1
    double starred_norm = 0.0; // ||f||*_phi1
};

/// Exact piecewise evaluation of int phi1(lambda_f(t)) dt and the starred
/// variant over the step structure of the distribution function.
SoriaNorms soria_norms(const GridFunction& f);

enum class QaStrategy {
    Single, // trivial one-term decomposition
    Levels, // dyadic level sets of |f|, ordered by decreasing L^1 norm
    Best,   // minimum of the above
};

/// Certified UPPER bound on the QA_p infimum via one admissible decomposition.
double qa_upper(const GridFunction& f, double p, QaStrategy strategy);

} // namespace carleson
