#pragma once

#include "lpcert/exact.hpp"
#include "lpcert/arith.hpp"
#include "lpcert/registry.hpp"
#include "lpcert/eisenstein.hpp"
#include "lpcert/cuspidal.hpp"
#include "lpcert/basis.hpp"
#include "lpcert/lp.hpp"
#include "lpcert/verifier.hpp"
#include "lpcert/theta.hpp"
