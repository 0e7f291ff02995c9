#include "pseudoatom/reference_data.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "pseudoatom/errors.hpp"

namespace pseudoatom::reference {

  namespace {

    [[noreturn]] void fail(int line, const std::string& what) {
      throw ConfigError("reference data line " + std::to_string(line) + ": " + what);
    }

    std::optional<PrintedValue> parse_value(const std::string& token, int line) {
      if (token == "-") return std::nullopt;
      double v = 0.0;
      const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || end != token.data() + token.size()) fail(line, "bad number '" + token + "'");
      return PrintedValue{v, token};
    }

    std::string token_of(const std::optional<PrintedValue>& v) { return v ? v->text : std::string("-"); }

  } // namespace

  std::string_view to_string(TableId table) {
    switch (table) {
    case TableId::I: return "I";
    case TableId::II: return "II";
    case TableId::III: return "III";
    }
    return "?";
  }

  TableId parse_table_id(std::string_view token) {
    if (token == "I") return TableId::I;
    if (token == "II") return TableId::II;
    if (token == "III") return TableId::III;
    throw ConfigError("unknown table id '" + std::string(token) + "'");
  }

  std::vector<ReferenceRecord> parse_reference_data(std::string_view text) {
    std::vector<ReferenceRecord> records;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    bool have_version = false;
    while (std::getline(in, raw)) {
      ++line_no;
      if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      std::istringstream line(raw);
      std::vector<std::string> tokens;
      for (std::string t; line >> t;) tokens.push_back(t);
      if (tokens.empty()) continue;

      if (tokens[0] == "format") {
        if (tokens.size() != 2 || tokens[1] != std::to_string(format_version))
          fail(line_no, "unsupported format line");
        have_version = true;
        continue;
      }
      if (!have_version) fail(line_no, "data before the 'format' line");
      if (tokens.size() < 5 || tokens.size() > 6) fail(line_no, "expected 5 or 6 fields");

      ReferenceRecord rec;
      try {
        rec.table = parse_table_id(tokens[0]);
      } catch (const ConfigError&) {
        fail(line_no, "unknown table id '" + tokens[0] + "'");
      }
      rec.label = tokens[1];
      auto p1 = parse_value(tokens[2], line_no);
      auto p2 = parse_value(tokens[3], line_no);
      if (!p1 || !p2) fail(line_no, "model columns may not be empty");
      rec.present1_ev = *p1;
      rec.present2_ev = *p2;
      rec.reference_ev = parse_value(tokens[4], line_no);
      if (tokens.size() == 6) rec.reference_alt_ev = parse_value(tokens[5], line_no);
      records.push_back(std::move(rec));
    }
    if (!have_version) throw ConfigError("reference data: missing 'format' line");
    return records;
  }

  std::string format_reference_data(std::span<const ReferenceRecord> records) {
    std::ostringstream out;
    out << "# table label present1 present2 ref [ref_alt]\n";
    out << "format " << format_version << '\n';
    for (const auto& r : records) {
      out << to_string(r.table) << ' ' << r.label << ' ' << r.present1_ev.text << ' ' << r.present2_ev.text << ' '
          << token_of(r.reference_ev);
      if (r.table == TableId::II || r.reference_alt_ev) out << ' ' << token_of(r.reference_alt_ev);
      out << '\n';
    }
    return out.str();
  }

  std::vector<ReferenceRecord> load_reference_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open reference data file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_reference_data(buf.str());
  }

  const std::vector<ReferenceRecord>& embedded_records() {
    static const std::vector<ReferenceRecord> records = parse_reference_data(embedded_reference_text());
    return records;
  }

  std::vector<ReferenceRecord> select(std::span<const ReferenceRecord> records, TableId table) {
    std::vector<ReferenceRecord> out;
    for (const auto& r : records)
      if (r.table == table) out.push_back(r);
    return out;
  }

} // namespace pseudoatom::reference
