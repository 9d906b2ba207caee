#pragma once

#include "qmhs/verify/campaign.hpp"
#include "qmhs/verify/checks.hpp"
#include "qmhs/verify/config.hpp"
#include "qmhs/verify/direct_eval.hpp"
#include "qmhs/verify/report.hpp"
