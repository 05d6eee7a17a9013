#pragma once

#include "plateau/error.hpp"
#include "plateau/io.hpp"
#include "plateau/numerics.hpp"
#include "plateau/profile_curve.hpp"
#include "plateau/stability.hpp"
#include "plateau/verify.hpp"
