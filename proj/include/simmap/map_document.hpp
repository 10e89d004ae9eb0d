// Copyright 2026 The Simmap Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SIMMAP_MAP_DOCUMENT_HPP
#define SIMMAP_MAP_DOCUMENT_HPP

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "simmap/errors.hpp"

namespace simmap {

/// One exported item: canonical coordinates plus display metadata.
struct DocumentItem {
  std::string id;
  std::string label;
  double weight = 0.0;
  double x = 0.0;
  double y = 0.0;
  std::optional<int> cluster;
};

/// Serialized result of one layout run. The score field holds the stress for
/// MDS methods and the objective value for VOS, per the method tag.
struct MapDocument {
  std::string method;      // mds-ordinal | mds-interval | vos
  std::string similarity;  // assoc | cosine
  std::uint64_t seed = 0;
  std::size_t starts = 0;
  std::size_t iterations = 0;
  double score = 0.0;
  double zero_pair_fraction = 0.0;
  std::vector<DocumentItem> items;
};

namespace detail {

/// Shortest decimal form that round-trips the double exactly.
inline std::string format_double(double v) {
  char buf[64];
  auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

inline void append_json_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace detail

/// Serializes with fixed field order and shortest round-trip numbers, so
/// identical documents always produce identical bytes.
inline std::string serialize(const MapDocument& doc) {
  std::string out;
  out += "{\n  \"meta\": {\n";
  out += "    \"method\": ";
  detail::append_json_string(out, doc.method);
  out += ",\n    \"similarity\": ";
  detail::append_json_string(out, doc.similarity);
  out += ",\n    \"seed\": " + std::to_string(doc.seed);
  out += ",\n    \"starts\": " + std::to_string(doc.starts);
  out += ",\n    \"iterations\": " + std::to_string(doc.iterations);
  out += ",\n    \"score\": " + detail::format_double(doc.score);
  out += ",\n    \"zero_pair_fraction\": " + detail::format_double(doc.zero_pair_fraction);
  out += "\n  },\n  \"items\": [\n";
  for (std::size_t i = 0; i < doc.items.size(); ++i) {
    const DocumentItem& item = doc.items[i];
    out += "    {\"id\": ";
    detail::append_json_string(out, item.id);
    out += ", \"label\": ";
    detail::append_json_string(out, item.label);
    out += ", \"weight\": " + detail::format_double(item.weight);
    out += ", \"x\": " + detail::format_double(item.x);
    out += ", \"y\": " + detail::format_double(item.y);
    if (item.cluster) out += ", \"cluster\": " + std::to_string(*item.cluster);
    out += i + 1 < doc.items.size() ? "},\n" : "}\n";
  }
  out += "  ]\n}\n";
  return out;
}

inline MapDocument parse_document(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw data_error(std::string("invalid map document: ") + e.what());
  }
  MapDocument doc;
  try {
    const auto& meta = j.at("meta");
    doc.method = meta.at("method").get<std::string>();
    doc.similarity = meta.at("similarity").get<std::string>();
    doc.seed = meta.at("seed").get<std::uint64_t>();
    doc.starts = meta.at("starts").get<std::size_t>();
    doc.iterations = meta.at("iterations").get<std::size_t>();
    doc.score = meta.at("score").get<double>();
    doc.zero_pair_fraction = meta.at("zero_pair_fraction").get<double>();
    for (const auto& ij : j.at("items")) {
      DocumentItem item;
      item.id = ij.at("id").get<std::string>();
      item.label = ij.at("label").get<std::string>();
      item.weight = ij.at("weight").get<double>();
      item.x = ij.at("x").get<double>();
      item.y = ij.at("y").get<double>();
      if (ij.contains("cluster")) item.cluster = ij.at("cluster").get<int>();
      doc.items.push_back(std::move(item));
    }
  } catch (const nlohmann::json::exception& e) {
    throw data_error(std::string("invalid map document: ") + e.what());
  }
  return doc;
}

inline MapDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open map document '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw data_error("write failed for '" + path + "'");
}

}  // namespace simmap

#endif  // SIMMAP_MAP_DOCUMENT_HPP
