#pragma once

#include "rpys/corpus.hpp"
#include "rpys/normalize.hpp"
#include "rpys/peak_analysis.hpp"
#include "rpys/report.hpp"
#include "rpys/spectroscopy.hpp"
#include "rpys/wos_parser.hpp"
