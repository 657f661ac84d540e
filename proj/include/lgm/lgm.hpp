#pragma once

#include "lgm/so3.hpp"
#include "lgm/retractions.hpp"
#include "lgm/group.hpp"
#include "lgm/reconstruction.hpp"
#include "lgm/objectives.hpp"
#include "lgm/optimizer.hpp"
#include "lgm/pontryagin.hpp"
#include "lgm/bench.hpp"
