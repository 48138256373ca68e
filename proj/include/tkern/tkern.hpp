#pragma once

#include "blaschke.hpp"
#include "core.hpp"
#include "expr.hpp"
#include "frostman.hpp"
#include "hardy.hpp"
#include "kernel.hpp"
#include "model_space.hpp"
#include "oracle.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "representations.hpp"
