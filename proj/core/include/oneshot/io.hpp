#pragma once

#include <string>

#include "oneshot/channels.hpp"
#include "oneshot/correlations.hpp"
#include "oneshot/protocol.hpp"

namespace oneshot::io {

// JSON documents.
//   channel:     {"name", "inputs": [..], "outputs": [..], "matrix": [[..], ..]}
//   correlation: {"alphabets": [R, S, P, Q], "table": [r][s][p][q]}
//   strategy:    {"e1": [..], "e2": [[..], [..]], "d1": [..], "d2": [[..], ..]}
// Numbers are written in shortest round-trip form, so reading back yields
// identical doubles. Parse and shape problems throw ValidationError naming
// the source and the offending field.

Channel parse_channel(const std::string& text, const std::string& source = "<string>");
std::string format_channel(const Channel& ch);

Correlation parse_correlation(const std::string& text, const std::string& source = "<string>");
std::string format_correlation(const Correlation& d);

ProtocolStrategy parse_strategy(const std::string& text, const std::string& source = "<string>");
std::string format_strategy(const ProtocolStrategy& st);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

inline Channel load_channel(const std::string& path) { return parse_channel(read_file(path), path); }
inline Correlation load_correlation(const std::string& path) { return parse_correlation(read_file(path), path); }
inline ProtocolStrategy load_strategy(const std::string& path) { return parse_strategy(read_file(path), path); }

}  // namespace oneshot::io
