#pragma once

#include "tritei/core.hpp"
#include "tritei/linalg.hpp"
#include "tritei/triangle.hpp"
#include "tritei/plmap.hpp"
#include "tritei/moduli.hpp"
#include "tritei/metric.hpp"
#include "tritei/maps.hpp"
#include "tritei/oracle.hpp"
