#include "carousel/experiment/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "carousel/core/errors.hpp"

namespace carousel::experiment {

namespace {

constexpr const char* kHeader =
    "row_type,algorithm,individual_precision,individual_map,individual_ndcg,"
    "carousel_precision,carousel_map,carousel_ndcg,carousel_ndcg2d,"
    "improvement_individual,improvement_carousel,rank_individual,rank_carousel,"
    "delta_rank";

std::string full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string percent1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%+.1f%%", v);
  return buf;
}

std::string signed_int(int v) {
  if (v == 0) return "0";
  char buf[16];
  std::snprintf(buf, sizeof buf, "%+d", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(',', pos);
    if (next == std::string::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
  return fields;
}

double to_double(const std::string& s, const std::string& context) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw DataError("bad number '" + s + "' in " + context);
  return v;
}

int to_int(const std::string& s, const std::string& context) {
  return static_cast<int>(to_double(s, context));
}

}  // namespace

void write_results_csv(const std::filesystem::path& path, const ReportTable& table) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out << kHeader << '\n';
  out << "fixed," << table.fixed_label << ',' << full(table.fixed_individual.precision)
      << ',' << full(table.fixed_individual.average_precision) << ','
      << full(table.fixed_individual.ndcg) << ',' << full(table.baseline.precision) << ','
      << full(table.baseline.average_precision) << ',' << full(table.baseline.ndcg) << ','
      << full(table.baseline.ndcg2d) << ",,,,,\n";
  for (const auto& row : table.rows) {
    if (row.failed) {
      out << "failed," << row.label << ",,,,,,,,,,,,\n";
      continue;
    }
    out << "candidate," << row.label << ',' << full(row.individual.precision) << ','
        << full(row.individual.average_precision) << ',' << full(row.individual.ndcg)
        << ',' << full(row.carousel.precision) << ','
        << full(row.carousel.average_precision) << ',' << full(row.carousel.ndcg) << ','
        << full(row.carousel.ndcg2d) << ',' << full(row.improvement_individual) << ','
        << full(row.improvement_carousel) << ',' << row.rank_individual << ','
        << row.rank_carousel << ',' << row.delta_rank << '\n';
  }
  out << "meta,kendall_tau," << full(table.kendall_tau) << ",,,,,,,,,,,\n";
  if (!out) throw DataError("write failure on '" + path.string() + "'");
}

ReportTable read_results_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open results file '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw DataError("'" + path.string() + "' is not a results CSV");

  ReportTable table;
  std::int64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto ctx = path.string() + ":" + std::to_string(line_no);
    const auto f = split_csv(line);
    if (f.size() != 14) throw DataError("wrong column count in " + ctx);
    if (f[0] == "fixed") {
      table.fixed_label = f[1];
      table.fixed_individual.precision = to_double(f[2], ctx);
      table.fixed_individual.average_precision = to_double(f[3], ctx);
      table.fixed_individual.ndcg = to_double(f[4], ctx);
      table.fixed_individual.ndcg2d = table.fixed_individual.ndcg;
      table.baseline.precision = to_double(f[5], ctx);
      table.baseline.average_precision = to_double(f[6], ctx);
      table.baseline.ndcg = to_double(f[7], ctx);
      table.baseline.ndcg2d = to_double(f[8], ctx);
    } else if (f[0] == "candidate") {
      ResultRow row;
      row.label = f[1];
      row.individual.precision = to_double(f[2], ctx);
      row.individual.average_precision = to_double(f[3], ctx);
      row.individual.ndcg = to_double(f[4], ctx);
      row.individual.ndcg2d = row.individual.ndcg;
      row.carousel.precision = to_double(f[5], ctx);
      row.carousel.average_precision = to_double(f[6], ctx);
      row.carousel.ndcg = to_double(f[7], ctx);
      row.carousel.ndcg2d = to_double(f[8], ctx);
      row.improvement_individual = to_double(f[9], ctx);
      row.improvement_carousel = to_double(f[10], ctx);
      row.rank_individual = to_int(f[11], ctx);
      row.rank_carousel = to_int(f[12], ctx);
      row.delta_rank = to_int(f[13], ctx);
      table.rows.push_back(std::move(row));
    } else if (f[0] == "failed") {
      ResultRow row;
      row.label = f[1];
      row.failed = true;
      table.rows.push_back(std::move(row));
    } else if (f[0] == "meta" && f[1] == "kendall_tau") {
      table.kendall_tau = to_double(f[2], ctx);
    } else {
      throw DataError("unknown row type '" + f[0] + "' in " + ctx);
    }
  }
  return table;
}

std::string render_markdown(const ReportTable& table) {
  std::ostringstream md;
  md << "# Carousel evaluation report\n\n";
  md << "Fixed carousel: " << table.fixed_label << "\n\n";
  md << "| Algorithm | Ind PREC | Ind MAP | Ind NDCG | Car PREC | Car MAP | Car NDCG "
        "| Car NDCG 2D | Impr Individual | Impr Carousel | Rank Ind | Rank Car | "
        "\xCE\x94 rank |\n";
  md << "|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  md << "| " << table.fixed_label << " (fixed) | " << fixed4(table.fixed_individual.precision)
     << " | " << fixed4(table.fixed_individual.average_precision) << " | "
     << fixed4(table.fixed_individual.ndcg) << " | " << fixed4(table.baseline.precision)
     << " | " << fixed4(table.baseline.average_precision) << " | "
     << fixed4(table.baseline.ndcg) << " | " << fixed4(table.baseline.ndcg2d)
     << " | -- | -- | -- | -- | -- |\n";
  for (const auto& row : table.rows) {
    if (row.failed) {
      md << "| " << row.label << " | -- | -- | -- | -- | -- | -- | -- | -- | -- | -- | -- | -- |\n";
      continue;
    }
    md << "| " << row.label << " | " << fixed4(row.individual.precision) << " | "
       << fixed4(row.individual.average_precision) << " | " << fixed4(row.individual.ndcg)
       << " | " << fixed4(row.carousel.precision) << " | "
       << fixed4(row.carousel.average_precision) << " | " << fixed4(row.carousel.ndcg)
       << " | " << fixed4(row.carousel.ndcg2d) << " | "
       << percent1(row.improvement_individual) << " | "
       << percent1(row.improvement_carousel) << " | " << row.rank_individual << " | "
       << row.rank_carousel << " | " << signed_int(row.delta_rank) << " |\n";
  }
  md << "\nKendall tau (individual vs carousel MAP ranking): "
     << fixed4(table.kendall_tau) << "\n";
  return md.str();
}

void write_results_markdown(const std::filesystem::path& path, const ReportTable& table) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out << render_markdown(table);
  if (!out) throw DataError("write failure on '" + path.string() + "'");
}

}  // namespace carousel::experiment
