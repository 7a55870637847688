#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "indexcode/demand_graph.h"

namespace indexcode {

// Line-oriented graph text format:
//
//   users 3 packets 5
//   user 1 have 5 want 1,2
//   user 2 have - want 1,2,4
//   user 3 have 4 want 3,5
//
// '-' is an empty set. Blank lines and '#' comments are ignored on input.
// Every user must appear exactly once.
DemandGraph parse_graph(std::string_view text);
DemandGraph read_graph_file(const std::string& path);

// Canonical form: users in order, ids ascending, one trailing newline per
// line. parse_graph(serialize_graph(g)) == g.
std::string serialize_graph(const DemandGraph& graph);

// Message list format used by verify-code: one XOR subset per line, packet
// ids separated by ',' '+' or whitespace. Letters A..Z are accepted as
// packet ids 1..26.
std::vector<IdSet> parse_messages(std::string_view text);
std::vector<IdSet> read_messages_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace indexcode
