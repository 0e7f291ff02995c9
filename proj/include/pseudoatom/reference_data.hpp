#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pseudoatom::reference {

  enum class TableId { I, II, III };

  std::string_view to_string(TableId table);
  TableId parse_table_id(std::string_view token);

  /// A published value together with its printed token, so that "5.500"
  /// keeps its trailing zeros when written back.
  struct PrintedValue {
    double value = 0.0;
    std::string text;

    friend bool operator==(const PrintedValue&, const PrintedValue&) = default;
  };

  /// One published table row.
  struct ReferenceRecord {
    TableId table = TableId::I;
    std::string label;
    PrintedValue present1_ev;
    PrintedValue present2_ev;
    std::optional<PrintedValue> reference_ev;
    std::optional<PrintedValue> reference_alt_ev;

    friend bool operator==(const ReferenceRecord&, const ReferenceRecord&) = default;
  };

  inline constexpr int format_version = 1;

  /// Line format: `<table> <label> <present1> <present2> <ref> [<ref_alt>]`,
  /// '-' for an unpublished value, '#' starts a comment, and a `format 1`
  /// line must precede the data. Throws ConfigError with the line number.
  std::vector<ReferenceRecord> parse_reference_data(std::string_view text);

  std::string format_reference_data(std::span<const ReferenceRecord> records);

  std::vector<ReferenceRecord> load_reference_file(const std::filesystem::path& path);

  /// The copy of data/reference_tables.dat compiled into the library.
  std::string_view embedded_reference_text();

  /// Parsed embedded tables.
  const std::vector<ReferenceRecord>& embedded_records();

  std::vector<ReferenceRecord> select(std::span<const ReferenceRecord> records, TableId table);

} // namespace pseudoatom::reference
