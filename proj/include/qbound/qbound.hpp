#pragma once

#include "qbound/bounds.hpp"
#include "qbound/cfrac.hpp"
#include "qbound/error.hpp"
#include "qbound/heights.hpp"
#include "qbound/interval.hpp"
#include "qbound/json_io.hpp"
#include "qbound/linforms.hpp"
#include "qbound/numeration.hpp"
#include "qbound/quadfield.hpp"
#include "qbound/search.hpp"
#include "qbound/walk.hpp"
