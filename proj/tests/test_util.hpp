#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <gtest/gtest.h>

#include "bornforge/error.hpp"

#include "bornforge/sampling.hpp"
#include "bornforge/stats.hpp"

namespace bornforge::testing_util {

inline MixtureState mixture(std::vector<double> v) { return MixtureState::validate(v); }
inline PureState pure(std::vector<Complex> v) { return PureState::validate(v); }

/// KS statistic of `xs` against `cdf`, sorting a copy first.
inline double ks(std::vector<double> xs, const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    return stats::ks_statistic(xs, cdf);
}

/// Kind of the bornforge::Error thrown by `f`; records a failure when none is thrown.
template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::InvalidArgument;
}

inline double ks_cutoff(std::size_t m) { return stats::ks_critical_value(m, 1e-3); }

}  // namespace bornforge::testing_util
