#include "otm/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "otm/error.hpp"

#ifndef OTM_VERSION
#define OTM_VERSION "0.0.0"
#endif

namespace otm {

std::string_view artifact_version() noexcept { return OTM_VERSION; }

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

Json to_json(const PovmParams& p) {
  Json j;
  j["a0"] = p.a0;
  j["vx"] = p.vx;
  j["vy"] = p.vy;
  j["vz"] = p.vz;
  return j;
}

Json to_json(const OptimizationReport& r, bool include_wall_time) {
  Json j;
  j["best_params"] = to_json(r.best_params);
  j["objective"] = r.objective;
  j["constraint_value"] = r.constraint_value;
  j["argmax_b0"] = r.argmax_b0;
  j["solver"] = std::string(to_string(r.solver));
  j["restarts_or_generations"] = r.restarts_or_generations;
  j["seed"] = r.seed;
  j["wall_time"] = include_wall_time ? Json(r.wall_time) : Json(nullptr);
  return j;
}

Json to_json(const CertifierSummary& s) {
  Json j;
  j["grid_step"] = s.grid_step;
  j["points_total"] = s.points_total;
  j["points_feasible"] = s.points_feasible;
  j["net_max"] = s.net_max;
  j["net_argmax"] = to_json(s.net_argmax);
  j["net_argmax_b0"] = s.net_argmax_b0;
  return j;
}

Json to_json(const ClaimSweep& s) {
  Json j;
  j["samples"] = s.samples;
  j["constraint_met"] = s.constraint_met;
  j["violations"] = s.violations;
  j["max_objective_when_met"] = s.max_objective_when_met;
  j["worst"] = to_json(s.worst);
  return j;
}

Json to_json(const HybridReport& r) {
  Json j;
  j["strategy_label"] = r.strategy_label;
  j["n"] = r.n;
  j["trials"] = r.trials;
  j["p_unlock0"] = r.p_unlock0;
  j["p_unlock1"] = r.p_unlock1;
  j["p_unlock_both"] = r.p_unlock_both;
  j["sim_total_variation"] = r.sim_total_variation;
  return j;
}

Json to_json(const SuccessProfile& p) {
  Json j;
  j["p"] = p.p;
  j["threshold"] = p.threshold;
  j["set_lo"] = p.set_lo;
  j["set_hi"] = p.set_hi;
  return j;
}

Json to_json(const TailCheck& c) {
  Json j;
  j["t"] = c.t;
  j["bound"] = c.bound;
  j["empirical"] = c.empirical;
  j["trials"] = c.trials;
  j["passed"] = c.passed;
  return j;
}

Json stamp(Json record, std::uint64_t seed) {
  record["seed"] = seed;
  record["version"] = std::string(artifact_version());
  return record;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable::Row& CsvTable::Row::operator<<(std::string_view s) {
  cells_.emplace_back(s);
  return *this;
}
CsvTable::Row& CsvTable::Row::operator<<(double x) { return *this << std::string_view(format_number(x)); }
CsvTable::Row& CsvTable::Row::operator<<(std::uint64_t x) { return *this << std::string_view(fmt::format("{}", x)); }
CsvTable::Row& CsvTable::Row::operator<<(std::int64_t x) { return *this << std::string_view(fmt::format("{}", x)); }
CsvTable::Row& CsvTable::Row::operator<<(bool b) { return *this << std::string_view(b ? "true" : "false"); }

CsvTable::Row& CsvTable::row() { return rows_.emplace_back(); }

std::string CsvTable::escape(std::string_view cell) {
  if (cell.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(cell);
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += escape(cells[i]);
    }
    out += "\r\n";
  };
  line(header_);
  for (const auto& r : rows_) {
    if (r.cells_.size() != header_.size())
      throw std::logic_error(fmt::format("csv row has {} cells, header has {}", r.cells_.size(), header_.size()));
    line(r.cells_);
  }
  return out;
}

CsvTable tail_checks_table(const std::vector<TailCheck>& checks) {
  CsvTable t({"t", "bound", "empirical", "trials", "passed"});
  for (const auto& c : checks) t.row() << c.t << c.bound << c.empirical << std::uint64_t{c.trials} << c.passed;
  return t;
}

void write_text_file(const std::string& path, std::string_view contents) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  if (ec) throw Error(ErrorCode::Io, fmt::format("cannot create directory for {}: {}", path, ec.message()));
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, fmt::format("cannot open {} for writing", path));
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::Io, fmt::format("write to {} failed", path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, fmt::format("cannot open {}", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace otm
