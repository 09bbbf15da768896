#pragma once

#include "parskew/algebra.hpp"
#include "parskew/extension.hpp"
#include "parskew/generator.hpp"
#include "parskew/groupoid.hpp"
#include "parskew/instance.hpp"
#include "parskew/linalg.hpp"
#include "parskew/partial_action.hpp"
#include "parskew/pipeline.hpp"
#include "parskew/rational.hpp"
#include "parskew/skew.hpp"
#include "parskew/tensor.hpp"
