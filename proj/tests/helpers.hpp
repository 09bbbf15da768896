#pragma once

#include <string>

#include "parskew/instance.hpp"

#ifndef PARSKEW_FIXTURES_DIR
#define PARSKEW_FIXTURES_DIR "fixtures"
#endif

namespace testutil {

inline std::string fixture_path(const std::string& name) {
    return std::string(PARSKEW_FIXTURES_DIR) + "/" + name;
}

inline parskew::InstanceFile load_fixture(const std::string& name) {
    return parskew::parse_instance(fixture_path(name));
}

inline parskew::ValidatedInstance load_validated(const std::string& name) {
    return parskew::validate_instance(load_fixture(name));
}

inline parskew::Vec qv(std::initializer_list<long long> xs) {
    parskew::Vec v;
    for (long long x : xs) v.push_back(parskew::Rational(x));
    return v;
}

inline parskew::Rational q(long long n, long long d = 1) { return parskew::rat(n, d); }

}  // namespace testutil
