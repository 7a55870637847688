#include "indexcode/graph_io.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "indexcode/errors.h"

namespace indexcode {
namespace {

std::string strip_comment(std::string line) {
  if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
    line.pop_back();
  }
  return line;
}

int parse_int(const std::string& tok, int line_no) {
  if (tok.empty() ||
      !std::all_of(tok.begin(), tok.end(),
                   [](unsigned char c) { return std::isdigit(c); })) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": expected a non-negative integer, got '" + tok + "'");
  }
  try {
    return std::stoi(tok);
  } catch (const std::out_of_range&) {
    throw ParseError("line " + std::to_string(line_no) + ": integer too large");
  }
}

IdSet parse_id_list(const std::string& tok, int line_no) {
  IdSet ids;
  if (tok == "-") return ids;
  std::stringstream ss(tok);
  std::string part;
  while (std::getline(ss, part, ',')) ids.push_back(parse_int(part, line_no));
  return ids;
}

std::string format_id_list(const IdSet& ids) {
  if (ids.empty()) return "-";
  std::string out;
  for (size_t k = 0; k < ids.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(ids[k]);
  }
  return out;
}

}  // namespace

DemandGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  int num_users = -1, num_packets = -1;
  std::vector<IdSet> have, want;
  std::vector<bool> seen;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;

    if (num_users < 0) {
      if (toks.size() != 4 || toks[0] != "users" || toks[2] != "packets") {
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected header 'users N packets P'");
      }
      num_users = parse_int(toks[1], line_no);
      num_packets = parse_int(toks[3], line_no);
      if (num_users < 1) throw ParseError("graph needs at least one user");
      have.assign(num_users, {});
      want.assign(num_users, {});
      seen.assign(num_users, false);
      continue;
    }
    if (toks.size() != 6 || toks[0] != "user" || toks[2] != "have" ||
        toks[4] != "want") {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'user n have ... want ...'");
    }
    const int n = parse_int(toks[1], line_no);
    if (n < 1 || n > num_users) {
      throw ParseError("line " + std::to_string(line_no) + ": user " +
                       std::to_string(n) + " out of range");
    }
    if (seen[n - 1]) {
      throw ParseError("line " + std::to_string(line_no) + ": user " +
                       std::to_string(n) + " listed twice");
    }
    seen[n - 1] = true;
    have[n - 1] = parse_id_list(toks[3], line_no);
    want[n - 1] = parse_id_list(toks[5], line_no);
  }
  if (num_users < 0) throw ParseError("missing header line");
  for (int n = 0; n < num_users; ++n) {
    if (!seen[n]) {
      throw ParseError("user " + std::to_string(n + 1) + " has no line");
    }
  }
  return DemandGraph::build(num_users, std::move(have), std::move(want),
                            num_packets);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DemandGraph read_graph_file(const std::string& path) {
  return parse_graph(read_text_file(path));
}

std::string serialize_graph(const DemandGraph& graph) {
  std::string out = "users " + std::to_string(graph.num_users()) +
                    " packets " + std::to_string(graph.num_packets()) + "\n";
  for (UserId n = 1; n <= graph.num_users(); ++n) {
    out += "user " + std::to_string(n) + " have " +
           format_id_list(graph.have(n)) + " want " +
           format_id_list(graph.want(n)) + "\n";
  }
  return out;
}

std::vector<IdSet> parse_messages(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<IdSet> messages;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_comment(raw);
    std::replace_if(
        line.begin(), line.end(), [](char c) { return c == ',' || c == '+'; },
        ' ');
    std::istringstream ls(line);
    IdSet msg;
    for (std::string tok; ls >> tok;) {
      if (tok.size() == 1 && std::isupper(static_cast<unsigned char>(tok[0]))) {
        msg.push_back(tok[0] - 'A' + 1);
      } else {
        const int id = parse_int(tok, line_no);
        if (id < 1) throw ParseError("packet ids start at 1");
        msg.push_back(id);
      }
    }
    if (msg.empty()) continue;
    std::sort(msg.begin(), msg.end());
    // XOR semantics: a packet listed twice cancels.
    IdSet reduced;
    for (size_t k = 0; k < msg.size();) {
      size_t run = k;
      while (run < msg.size() && msg[run] == msg[k]) ++run;
      if ((run - k) % 2 == 1) reduced.push_back(msg[k]);
      k = run;
    }
    messages.push_back(std::move(reduced));
  }
  return messages;
}

std::vector<IdSet> read_messages_file(const std::string& path) {
  return parse_messages(read_text_file(path));
}

}  // namespace indexcode
