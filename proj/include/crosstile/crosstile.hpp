#pragma once

#include "crosstile/checked.hpp"
#include "crosstile/commands.hpp"
#include "crosstile/cross.hpp"
#include "crosstile/cyclotomic.hpp"
#include "crosstile/dft.hpp"
#include "crosstile/document.hpp"
#include "crosstile/interval.hpp"
#include "crosstile/rational.hpp"
#include "crosstile/realline.hpp"
#include "crosstile/render.hpp"
#include "crosstile/report.hpp"
#include "crosstile/search.hpp"
#include "crosstile/tiling.hpp"
#include "crosstile/torus.hpp"
#include "crosstile/zn.hpp"
