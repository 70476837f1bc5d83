#pragma once

#include <string>

#include "fqm/zmod.hpp"

namespace fqm {

/// Point (r, s) of the discrete phase space Z_N x Z_N.
struct TorusPoint {
    ZMod r;
    ZMod s;

    TorusPoint(ZMod r_, ZMod s_) : r(r_), s(s_) {
        if (r.modulus() != s.modulus()) throw Error(ErrorCode::ModulusMismatch, "torus point components");
    }
    TorusPoint(std::int64_t r_, std::int64_t s_, std::int64_t N) : r(r_, N), s(s_, N) {}

    std::int64_t modulus() const noexcept { return r.modulus(); }

    friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
    friend TorusPoint operator+(const TorusPoint& x, const TorusPoint& y) { return {x.r + y.r, x.s + y.s}; }
    friend TorusPoint operator-(const TorusPoint& x) { return {-x.r, -x.s}; }

    std::string to_string() const {
        return "(" + std::to_string(r.value()) + "," + std::to_string(s.value()) + ")";
    }
};

}  // namespace fqm
