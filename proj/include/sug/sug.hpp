#pragma once

#include <sug/error.hpp>
#include <sug/manifest.hpp>
#include <sug/metrics.hpp>
#include <sug/pom.hpp>
#include <sug/project_view.hpp>
#include <sug/recommend.hpp>
#include <sug/report.hpp>
#include <sug/summary.hpp>
#include <sug/timestamp.hpp>
#include <sug/universe.hpp>
#include <sug/version_order.hpp>
