#pragma once

#include "hyperlie/mat4.hpp"
#include "hyperlie/families.hpp"
#include "hyperlie/lie_algebra.hpp"
#include "hyperlie/hypercomplex.hpp"
#include "hyperlie/geometry.hpp"
#include "hyperlie/known_groups.hpp"
#include "hyperlie/sampling.hpp"
#include "hyperlie/verify.hpp"
