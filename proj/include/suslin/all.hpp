#pragma once

#include "correspondence.hpp"
#include "divisor.hpp"
#include "json_io.hpp"
#include "mfactor.hpp"
#include "minpoly.hpp"
#include "modulus.hpp"
#include "pic_oracle.hpp"
#include "qn.hpp"
#include "sampling.hpp"
#include "suslin.hpp"
#include "tpoly.hpp"
#include "verify.hpp"
