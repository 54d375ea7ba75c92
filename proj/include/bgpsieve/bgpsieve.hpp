#pragma once

#include "bgpsieve/alarm.hpp"
#include "bgpsieve/asn.hpp"
#include "bgpsieve/assess.hpp"
#include "bgpsieve/events.hpp"
#include "bgpsieve/hijack.hpp"
#include "bgpsieve/io.hpp"
#include "bgpsieve/irr_graph.hpp"
#include "bgpsieve/mrt.hpp"
#include "bgpsieve/prefix.hpp"
#include "bgpsieve/prefix_tree.hpp"
#include "bgpsieve/report.hpp"
#include "bgpsieve/rib_engine.hpp"
#include "bgpsieve/rib_view.hpp"
#include "bgpsieve/route.hpp"
#include "bgpsieve/rpsl.hpp"
#include "bgpsieve/scanner.hpp"
#include "bgpsieve/tls.hpp"
#include "bgpsieve/tls_filter.hpp"
#include "bgpsieve/topology.hpp"
#include "bgpsieve/update.hpp"
