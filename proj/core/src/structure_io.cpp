#include "sheafcsp/structure_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sheafcsp/errors.hpp"

namespace sheafcsp {

namespace {

using nlohmann::json;

// Minimal JSON walker that records the line on which each tuple of
// "relations" starts, so violations can point back into the file.
class TupleLineLocator {
 public:
  explicit TupleLineLocator(std::string_view text) : text_(text) {}

  std::map<std::pair<std::string, std::size_t>, std::size_t> run() {
    skip_ws();
    value({});
    return lines_;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
      } else if (c != ' ' && c != '\t' && c != '\r') {
        break;
      }
      ++pos_;
    }
  }

  std::string string_token() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') ++pos_;
      if (pos_ < text_.size()) out.push_back(text_[pos_]);
      ++pos_;
    }
    ++pos_;
    return out;
  }

  // path: keys/indices leading to the current value, as strings.
  void value(const std::vector<std::string>& path) {
    skip_ws();
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != '}') {
        skip_ws();
        std::string key = string_token();
        skip_ws();
        ++pos_;  // ':'
        auto sub = path;
        sub.push_back(key);
        value(sub);
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
        skip_ws();
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      std::size_t index = 0;
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != ']') {
        skip_ws();
        if (path.size() == 2 && path[0] == "relations") {
          lines_[{path[1], index}] = line_;
        }
        auto sub = path;
        sub.push_back(std::to_string(index));
        value(sub);
        ++index;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
        skip_ws();
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' &&
             text_[pos_] != '}' && text_[pos_] != '\n') {
        ++pos_;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::map<std::pair<std::string, std::size_t>, std::size_t> lines_;
};

[[noreturn]] void fail(const std::string& what) {
  throw InputError("structure JSON: " + what);
}

}  // namespace

Structure parse_structure_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(e.what());
  }
  if (!doc.is_object()) fail("top level must be an object");
  if (!doc.contains("signature") || !doc["signature"].is_array()) {
    fail("missing \"signature\" array");
  }
  if (!doc.contains("size") || !doc["size"].is_number_unsigned()) {
    fail("missing or negative \"size\"");
  }

  std::vector<Symbol> symbols;
  for (const auto& entry : doc["signature"]) {
    if (!entry.is_object() || !entry.contains("name") || !entry.contains("arity") ||
        !entry["name"].is_string() || !entry["arity"].is_number_unsigned()) {
      fail("signature entries need a string \"name\" and an unsigned \"arity\"");
    }
    symbols.push_back({entry["name"].get<std::string>(),
                       entry["arity"].get<std::size_t>()});
  }

  StructureData data;
  data.signature = Signature(std::move(symbols));
  data.size = doc["size"].get<std::size_t>();
  data.relations.resize(data.signature.size());

  if (doc.contains("relations")) {
    const auto& rels = doc["relations"];
    if (!rels.is_object()) fail("\"relations\" must be an object");
    for (const auto& [name, tuples] : rels.items()) {
      auto idx = data.signature.index_of(name);
      if (!idx) fail("relation '" + name + "' is not in the signature");
      if (!tuples.is_array()) fail("relation '" + name + "' must be an array");
      for (const auto& t : tuples) {
        if (!t.is_array()) fail("relation '" + name + "' holds a non-array tuple");
        Tuple tuple;
        for (const auto& e : t) {
          if (!e.is_number_unsigned()) {
            fail("relation '" + name + "' holds a non-natural entry");
          }
          auto v = e.get<std::uint64_t>();
          tuple.push_back(v > std::numeric_limits<Element>::max()
                              ? std::numeric_limits<Element>::max()
                              : static_cast<Element>(v));
        }
        data.relations[*idx].push_back(std::move(tuple));
      }
    }
  }

  auto violations = validate_structure(data);
  if (!violations.empty()) {
    auto lines = TupleLineLocator(text).run();
    std::ostringstream msg;
    msg << "invalid structure:";
    for (const auto& v : violations) {
      msg << "\n  ";
      auto it = lines.find({v.symbol, v.tuple_index});
      if (it != lines.end()) msg << "line " << it->second << ": ";
      msg << v.symbol << "[" << v.tuple_index << "]: " << v.message;
    }
    throw InputError(msg.str());
  }
  return Structure(std::move(data));
}

Structure read_structure_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open structure file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_structure_json(buf.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string to_structure_json(const Structure& s) {
  std::ostringstream out;
  out << "{\"signature\":[";
  const auto& sig = s.signature();
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i) out << ",";
    out << "{\"name\":" << json(sig[i].name).dump() << ",\"arity\":" << sig[i].arity
        << "}";
  }
  out << "],\n\"size\":" << s.size() << ",\n\"relations\":{";
  for (std::size_t r = 0; r < sig.size(); ++r) {
    if (r) out << ",";
    out << "\n" << json(sig[r].name).dump() << ":[";
    const auto& tuples = s.tuples(r);
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      out << (i ? ",\n  [" : "\n  [");
      for (std::size_t j = 0; j < tuples[i].size(); ++j) {
        if (j) out << ",";
        out << tuples[i][j];
      }
      out << "]";
    }
    out << "]";
  }
  out << "}}\n";
  return out.str();
}

void write_structure_file(const std::filesystem::path& path, const Structure& s) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write structure file " + path.string());
  out << to_structure_json(s);
}

}  // namespace sheafcsp
