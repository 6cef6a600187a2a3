#pragma once

// JSON records and CSV tables for experiment outputs. Numbers are written in
// shortest round-trip form so equal values always produce equal bytes.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "otm/adversary.hpp"
#include "otm/bounds.hpp"
#include "otm/disturbance.hpp"

namespace otm {

using Json = nlohmann::ordered_json;

std::string_view artifact_version() noexcept;

std::string format_number(double x);

Json to_json(const PovmParams& p);
/// wall_time is written as null unless include_wall_time is set.
Json to_json(const OptimizationReport& r, bool include_wall_time = false);
Json to_json(const CertifierSummary& s);
Json to_json(const ClaimSweep& s);
Json to_json(const HybridReport& r);
Json to_json(const SuccessProfile& p);
Json to_json(const TailCheck& c);

/// Adds "seed" and "version" keys.
Json stamp(Json record, std::uint64_t seed);

/// RFC 4180 style table with a header row.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  class Row {
   public:
    Row& operator<<(std::string_view s);
    Row& operator<<(const char* s) { return *this << std::string_view(s); }
    Row& operator<<(double x);
    Row& operator<<(std::uint64_t x);
    Row& operator<<(std::int64_t x);
    Row& operator<<(int x) { return *this << static_cast<std::int64_t>(x); }
    Row& operator<<(unsigned x) { return *this << static_cast<std::uint64_t>(x); }
    Row& operator<<(bool b);

   private:
    friend class CsvTable;
    std::vector<std::string> cells_;
  };

  Row& row();
  std::size_t rows() const noexcept { return rows_.size(); }
  /// Throws std::logic_error if a row's width differs from the header.
  std::string str() const;

  static std::string escape(std::string_view cell);

 private:
  std::vector<std::string> header_;
  std::vector<Row> rows_;
};

CsvTable tail_checks_table(const std::vector<TailCheck>& checks);

/// Writes bytes exactly; creates parent directories. Throws Error(Io).
void write_text_file(const std::string& path, std::string_view contents);
/// Throws Error(Io).
std::string read_text_file(const std::string& path);

}  // namespace otm
