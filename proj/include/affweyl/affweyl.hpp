#pragma once

#include "affweyl/affine.hpp"
#include "affweyl/config.hpp"
#include "affweyl/conjugacy.hpp"
#include "affweyl/fixed_points.hpp"
#include "affweyl/invariants.hpp"
#include "affweyl/report.hpp"
#include "affweyl/root_datum.hpp"
#include "affweyl/svg.hpp"
#include "affweyl/twist.hpp"
#include "affweyl/verifiers.hpp"
