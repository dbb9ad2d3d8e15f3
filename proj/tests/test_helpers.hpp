#pragma once

#include "rotomag/params.hpp"

namespace testutil {

struct Resolved {
    rotomag::PhysicalConfig cfg;
    rotomag::DerivedParams d;
};

inline Resolved defaults() {
    Resolved r;
    r.cfg = rotomag::PhysicalConfig::reference_defaults();
    r.d = rotomag::derive_params(r.cfg);
    return r;
}

}  // namespace testutil
