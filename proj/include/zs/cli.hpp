// Command dispatch shared by the binary and the test suite: every subcommand
// is a pure function from a RunConfig to an exit code plus emitted documents.
#pragma once

#include "zs/cache.hpp"
#include "zs/extremal.hpp"
#include "zs/matching.hpp"
#include "zs/matrix.hpp"
#include "zs/numbers.hpp"
#include "zs/partition.hpp"
#include "zs/scheme.hpp"
#include "zs/spectral.hpp"
#include "zs/symfunc.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace zs {

enum class Command { partitions, matchings, matrix, scheme, certify, scan, brute, derange, oracle };
enum class Format { csv, json, pretty };

struct RunConfig {
  Command command = Command::partitions;
  int n = 0;
  int t = 1;
  Rat alpha = 2;
  Format format = Format::pretty;
  bool format_set = false;        // explicit --format beats per-command default
  std::string emit = "p-table";   // scheme: p-table | json
  std::string kind = "zonal";     // matrix: perm | kostka | alpha-kostka | zonal | char
  int n_min = 0;
  int n_max = 0;
  std::filesystem::path cache_dir;
  bool force_brute = false;
  bool cross = false;
  std::uint64_t seed = 0;
  int samples = 200;
};

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

namespace cli_detail {

using ordered_json = nlohmann::ordered_json;

inline Format default_format(Command c) {
  if (c == Command::brute) return Format::json;
  if (c == Command::scan) return Format::csv;
  return Format::pretty;
}

inline std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (const char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) row += ',';
    row += csv_quote(fields[i]);
  }
  return row + "\n";
}

inline const char* bool_str(bool b) { return b ? "true" : "false"; }

inline void emit_matrix_csv(std::ostream& out, const RationalMatrix& m) {
  std::vector<std::string> header{"lambda\\rho"};
  for (const Partition& c : m.col_labels) header.push_back(c.str());
  out << csv_row(header);
  for (int i = 0; i < m.rows(); ++i) {
    std::vector<std::string> row{m.row_labels[static_cast<std::size_t>(i)].str()};
    for (int j = 0; j < m.cols(); ++j) row.push_back(rat_string(m.at(i, j)));
    out << csv_row(row);
  }
}

inline void emit_matrix_pretty(std::ostream& out, const RationalMatrix& m) {
  std::vector<std::size_t> width(static_cast<std::size_t>(m.cols()) + 1, 0);
  for (const Partition& r : m.row_labels) width[0] = std::max(width[0], r.str().size());
  for (int j = 0; j < m.cols(); ++j) {
    std::size_t w = m.col_labels[static_cast<std::size_t>(j)].str().size();
    for (int i = 0; i < m.rows(); ++i) w = std::max(w, rat_string(m.at(i, j)).size());
    width[static_cast<std::size_t>(j) + 1] = w;
  }
  const auto pad = [&out](const std::string& s, std::size_t w) {
    for (std::size_t k = s.size(); k < w; ++k) out << ' ';
    out << s;
  };
  pad("", width[0]);
  for (int j = 0; j < m.cols(); ++j) {
    out << "  ";
    pad(m.col_labels[static_cast<std::size_t>(j)].str(), width[static_cast<std::size_t>(j) + 1]);
  }
  out << "\n";
  for (int i = 0; i < m.rows(); ++i) {
    pad(m.row_labels[static_cast<std::size_t>(i)].str(), width[0]);
    for (int j = 0; j < m.cols(); ++j) {
      out << "  ";
      pad(rat_string(m.at(i, j)), width[static_cast<std::size_t>(j) + 1]);
    }
    out << "\n";
  }
}

inline ordered_json matrix_to_json(const RationalMatrix& m) {
  ordered_json rows = ordered_json::object();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::object();
    for (int j = 0; j < m.cols(); ++j)
      row[m.col_labels[static_cast<std::size_t>(j)].str()] = rat_string(m.at(i, j));
    rows[m.row_labels[static_cast<std::size_t>(i)].str()] = row;
  }
  return rows;
}

inline void run_partitions(const RunConfig& cfg, Format fmt, std::ostream& out) {
  if (cfg.n < 1) throw domain_error("partitions: need n >= 1");
  const auto labels = enumerate_partitions(cfg.n);
  struct Row {
    std::string partition, z, sphere, dim;
    int length, units;
  };
  std::vector<Row> rows;
  for (const Partition& p : labels)
    rows.push_back({p.str(), aut_weight(p).str(), sphere_size(p, cfg.n).str(),
                    hook_dim(p.doubled()).str(), p.length(), p.unit_parts()});
  if (fmt == Format::csv) {
    out << csv_row({"partition", "length", "units", "z", "sphere", "dim"});
    for (const Row& r : rows)
      out << csv_row({r.partition, std::to_string(r.length), std::to_string(r.units), r.z,
                      r.sphere, r.dim});
  } else if (fmt == Format::json) {
    ordered_json doc;
    doc["command"] = "partitions";
    doc["n"] = cfg.n;
    doc["items"] = ordered_json::array();
    for (const Row& r : rows)
      doc["items"].push_back({{"partition", r.partition},
                              {"length", r.length},
                              {"units", r.units},
                              {"z", r.z},
                              {"sphere", r.sphere},
                              {"dim", r.dim}});
    out << doc.dump(2) << "\n";
  } else {
    std::size_t w = 0;
    for (const Row& r : rows) w = std::max(w, r.partition.size());
    for (const Row& r : rows) {
      out << r.partition;
      for (std::size_t k = r.partition.size(); k < w; ++k) out << ' ';
      out << "  len=" << r.length << " units=" << r.units << " z=" << r.z
          << " sphere=" << r.sphere << " dim=" << r.dim << "\n";
    }
  }
}

inline void run_matchings(const RunConfig& cfg, Format fmt, std::ostream& out) {
  if (cfg.n < 1) throw domain_error("matchings: need n >= 1");
  const auto all = enumerate_matchings(cfg.n);
  const PerfectMatching base = PerfectMatching::base(cfg.n);
  if (fmt == Format::csv) {
    out << csv_row({"index", "matching", "type"});
    for (std::size_t i = 0; i < all.size(); ++i)
      out << csv_row({std::to_string(i), all[i].str(), cycle_type(base, all[i]).str()});
  } else if (fmt == Format::json) {
    ordered_json doc;
    doc["command"] = "matchings";
    doc["n"] = cfg.n;
    doc["items"] = ordered_json::array();
    for (std::size_t i = 0; i < all.size(); ++i)
      doc["items"].push_back({{"index", i},
                              {"matching", all[i].str()},
                              {"type", cycle_type(base, all[i]).str()}});
    out << doc.dump(2) << "\n";
  } else {
    for (const PerfectMatching& m : all)
      out << m.str() << "  d=" << cycle_type(base, m).str() << "\n";
  }
}

inline void run_matrix(const RunConfig& cfg, Format fmt, std::ostream& out) {
  static const std::vector<std::string> kinds{"perm", "kostka", "alpha-kostka", "zonal", "char"};
  if (std::find(kinds.begin(), kinds.end(), cfg.kind) == kinds.end())
    throw domain_error("matrix: unknown kind \"" + cfg.kind + "\"");
  if (cfg.n < 1) throw domain_error("matrix: need n >= 1");
  if (cfg.kind == "alpha-kostka" && cfg.alpha <= 0)
    throw domain_error("matrix: need alpha > 0");
  const RationalMatrix m = cached_transition_matrix(
      cfg.cache_dir, cfg.kind, cfg.n,
      cfg.kind == "alpha-kostka" ? std::optional<Rat>(cfg.alpha) : std::nullopt);
  if (fmt == Format::csv) {
    emit_matrix_csv(out, m);
  } else if (fmt == Format::json) {
    ordered_json doc;
    doc["command"] = "matrix";
    doc["kind"] = cfg.kind;
    doc["n"] = cfg.n;
    if (cfg.kind == "alpha-kostka") doc["alpha"] = rat_string(cfg.alpha);
    doc["rows"] = matrix_to_json(m);
    out << doc.dump(2) << "\n";
  } else {
    emit_matrix_pretty(out, m);
  }
}

inline void run_scheme(const RunConfig& cfg, std::ostream& out) {
  const AssociationScheme& s = build_scheme(cfg.n);
  if (cfg.emit == "p-table") {
    emit_matrix_csv(out, s.p_table);
  } else if (cfg.emit == "json") {
    out << matrix_to_json(s.p_table).dump(2) << "\n";
  } else {
    throw domain_error("scheme: unknown emit \"" + cfg.emit + "\"");
  }
}

inline int run_certify(const RunConfig& cfg, Format fmt, std::ostream& out) {
  const Certificate c = certify(cfg.n, cfg.t);
  const auto isMin = [&](const Partition& p) {
    for (const Partition& q : c.minimizers)
      if (q == p) return true;
    return false;
  };
  if (fmt == Format::csv) {
    out << csv_row({"lambda", "eta", "fat", "minimizer"});
    for (std::size_t i = 0; i < c.eigen.labels.size(); ++i) {
      const Partition& p = c.eigen.labels[i];
      out << csv_row({p.str(), rat_string(c.eigen.values[i]),
                      bool_str(classify_fat(p, cfg.n, cfg.t).fat), bool_str(isMin(p))});
    }
  } else if (fmt == Format::json) {
    ordered_json doc;
    doc["command"] = "certify";
    doc["n"] = c.n;
    doc["t"] = c.t;
    doc["zeta"] = rat_string(c.zeta);
    ordered_json w = ordered_json::object();
    for (std::size_t i = 0; i < c.weights.labels.size(); ++i)
      w[c.weights.labels[i].str()] = rat_string(c.weights.values[i]);
    doc["weights"] = w;
    ordered_json e = ordered_json::object();
    for (std::size_t i = 0; i < c.eigen.labels.size(); ++i)
      e[c.eigen.labels[i].str()] = rat_string(c.eigen.values[i]);
    doc["eigenvalues"] = e;
    doc["fattest"] = {{"label", fattest_label(c.n, c.t).str()},
                      {"eta", rat_string(c.fattest_eig)}};
    doc["min_eigenvalue"] = rat_string(c.min_eigenvalue);
    doc["minimizers"] = ordered_json::array();
    for (const Partition& p : c.minimizers) doc["minimizers"].push_back(p.str());
    doc["min_is_zeta"] = c.min_is_zeta;
    doc["minimizers_all_fat"] = c.minimizers_all_fat;
    doc["hoffman"] = rat_string(c.hoffman_value);
    doc["valid"] = c.valid;
    out << doc.dump(2) << "\n";
  } else {
    out << "certificate n=" << c.n << " t=" << c.t << "\n";
    out << "zeta: " << rat_string(c.zeta) << "\n";
    out << "weights:\n";
    for (std::size_t i = 0; i < c.weights.labels.size(); ++i)
      out << "  " << c.weights.labels[i].str() << ": " << rat_string(c.weights.values[i]) << "\n";
    out << "eigenvalues:\n";
    for (std::size_t i = 0; i < c.eigen.labels.size(); ++i) {
      const Partition& p = c.eigen.labels[i];
      out << "  " << p.str() << ": " << rat_string(c.eigen.values[i]);
      if (classify_fat(p, cfg.n, cfg.t).fat) out << " fat";
      if (isMin(p)) out << " min";
      out << "\n";
    }
    out << "fattest " << fattest_label(c.n, c.t).str() << ": " << rat_string(c.fattest_eig)
        << "\n";
    out << "hoffman: " << rat_string(c.hoffman_value) << "\n";
    if (c.valid)
      out << "VALID: bound " << rat_string(c.hoffman_value) << "\n";
    else
      out << "INVALID: bound not certified\n";
  }
  return c.valid ? 0 : 2;
}

inline void run_scan(const RunConfig& cfg, Format fmt, std::ostream& out) {
  const ScanResult r = threshold_scan(cfg.t, cfg.n_min, cfg.n_max);
  const auto minimizerList = [](const ScanRow& row) {
    std::string s;
    for (std::size_t i = 0; i < row.minimizers.size(); ++i) {
      if (i) s += "; ";
      s += row.minimizers[i].str();
    }
    return s;
  };
  if (fmt == Format::csv) {
    out << csv_row({"n", "valid", "zeta", "min_eigenvalue", "minimizers", "fattest_eig",
                    "hoffman"});
    for (const ScanRow& row : r.rows)
      out << csv_row({std::to_string(row.n), bool_str(row.valid), rat_string(row.zeta),
                      rat_string(row.min_eigenvalue), minimizerList(row),
                      rat_string(row.fattest_eig), rat_string(row.hoffman_value)});
    out << "# first_contiguous_valid_n=" << r.first_contiguous_valid_n << "\n";
  } else if (fmt == Format::json) {
    ordered_json doc;
    doc["command"] = "scan";
    doc["t"] = r.t;
    doc["n_min"] = r.n_min;
    doc["n_max"] = r.n_max;
    doc["rows"] = ordered_json::array();
    for (const ScanRow& row : r.rows) {
      ordered_json jr;
      jr["n"] = row.n;
      jr["valid"] = row.valid;
      jr["zeta"] = rat_string(row.zeta);
      jr["min_eigenvalue"] = rat_string(row.min_eigenvalue);
      jr["minimizers"] = ordered_json::array();
      for (const Partition& p : row.minimizers) jr["minimizers"].push_back(p.str());
      jr["fattest_eig"] = rat_string(row.fattest_eig);
      jr["hoffman"] = rat_string(row.hoffman_value);
      doc["rows"].push_back(jr);
    }
    doc["first_contiguous_valid_n"] = r.first_contiguous_valid_n;
    out << doc.dump(2) << "\n";
  } else {
    out << "scan t=" << r.t << " n=" << r.n_min << ".." << r.n_max << "\n";
    for (const ScanRow& row : r.rows)
      out << "  n=" << row.n << " " << (row.valid ? "valid" : "invalid")
          << " zeta=" << rat_string(row.zeta) << " min=" << rat_string(row.min_eigenvalue)
          << " at " << minimizerList(row) << " fattest=" << rat_string(row.fattest_eig)
          << " hoffman=" << rat_string(row.hoffman_value) << "\n";
    if (r.first_contiguous_valid_n)
      out << "first contiguous valid n: " << r.first_contiguous_valid_n << "\n";
    else
      out << "no contiguous valid tail in window\n";
  }
}

inline void run_cross(const RunConfig& cfg, Format fmt, std::ostream& out) {
  const CrossCheckReport rep = cross_product_check(cfg.n, cfg.t, cfg.seed, cfg.samples);
  if (fmt == Format::json) {
    ordered_json doc;
    doc["command"] = "brute";
    doc["mode"] = "cross";
    doc["n"] = rep.n;
    doc["t"] = rep.t;
    doc["seed"] = rep.seed;
    doc["samples"] = rep.samples;
    doc["bound"] = rep.bound.str();
    doc["product_bound"] = rep.product_bound.str();
    doc["canonical_count"] = rep.canonical_count;
    doc["sizes_ok"] = rep.sizes_ok;
    doc["pair_checks"] = rep.pair_checks;
    doc["pairwise_consistent"] = rep.pairwise_consistent;
    if (rep.non_cross_witness)
      doc["non_cross_witness"] = {rep.non_cross_witness->first.str(),
                                  rep.non_cross_witness->second.str()};
    else
      doc["non_cross_witness"] = nullptr;
    doc["max_sampled_product"] = rep.max_sampled_product.str();
    doc["bound_applicable"] = rep.bound_applicable;
    doc["sampled_within_bound"] = rep.sampled_within_bound;
    out << doc.dump(2) << "\n";
  } else if (fmt == Format::csv) {
    out << csv_row({"n", "t", "seed", "samples", "bound", "product_bound", "canonical_count",
                    "sizes_ok", "pair_checks", "pairwise_consistent", "non_cross_witness",
                    "max_sampled_product", "bound_applicable", "sampled_within_bound"});
    const std::string witness =
        rep.non_cross_witness
            ? rep.non_cross_witness->first.str() + " / " + rep.non_cross_witness->second.str()
            : "";
    out << csv_row({std::to_string(rep.n), std::to_string(rep.t), std::to_string(rep.seed),
                    std::to_string(rep.samples), rep.bound.str(), rep.product_bound.str(),
                    std::to_string(rep.canonical_count), bool_str(rep.sizes_ok),
                    std::to_string(rep.pair_checks), bool_str(rep.pairwise_consistent), witness,
                    rep.max_sampled_product.str(), bool_str(rep.bound_applicable),
                    bool_str(rep.sampled_within_bound)});
  } else {
    out << "cross-intersecting check n=" << rep.n << " t=" << rep.t << "\n";
    out << "canonical families: " << rep.canonical_count << ", each of size " << rep.bound.str()
        << (rep.sizes_ok ? "" : " (SIZE MISMATCH)") << "\n";
    out << "pair checks: " << rep.pair_checks << ", cross-intersecting iff identical: "
        << bool_str(rep.pairwise_consistent) << "\n";
    if (rep.non_cross_witness)
      out << "non-intersecting pair: " << rep.non_cross_witness->first.str() << " vs "
          << rep.non_cross_witness->second.str() << "\n";
    out << "sampled pairs: " << rep.samples << " (seed " << rep.seed
        << "), max product: " << rep.max_sampled_product.str() << ", bound "
        << rep.product_bound.str() << " "
        << (rep.bound_applicable
                ? (rep.sampled_within_bound ? "(respected)" : "(VIOLATED)")
                : "(informational)")
        << "\n";
  }
}

inline void run_brute(const RunConfig& cfg, Format fmt, std::ostream& out) {
  if (cfg.cross) {
    run_cross(cfg, fmt, out);
    return;
  }
  bool certValid = false;
  Rat bound;
  if (2 * cfg.t < cfg.n) {
    const Certificate c = certify(cfg.n, cfg.t);
    certValid = c.valid;
    bound = c.hoffman_value;
  }
  if (certValid && !cfg.force_brute) {
    if (fmt == Format::json) {
      ordered_json doc;
      doc["command"] = "brute";
      doc["n"] = cfg.n;
      doc["t"] = cfg.t;
      doc["forced"] = false;
      doc["skipped"] = true;
      doc["reason"] = "certificate valid; bound already proven";
      doc["bound"] = rat_string(bound);
      out << doc.dump(2) << "\n";
    } else if (fmt == Format::csv) {
      out << csv_row({"n", "t", "skipped", "optimum", "matches_canonical"});
      out << csv_row({std::to_string(cfg.n), std::to_string(cfg.t), "true", rat_string(bound),
                      ""});
    } else {
      out << "search skipped: certificate at n=" << cfg.n << " t=" << cfg.t
          << " is valid, bound " << rat_string(bound)
          << " already proven (use --force-brute to search anyway)\n";
    }
    return;
  }
  const SearchResult r = max_independent_exact(cfg.n, cfg.t, cfg.force_brute);
  if (fmt == Format::json) {
    ordered_json doc;
    doc["command"] = "brute";
    doc["n"] = r.n;
    doc["t"] = r.t;
    doc["forced"] = cfg.force_brute;
    doc["skipped"] = false;
    doc["optimum"] = std::to_string(r.optimum);
    doc["matches_canonical"] = r.matches_canonical;
    doc["witness"] = ordered_json::array();
    for (const PerfectMatching& m : r.witness) doc["witness"].push_back(m.str());
    out << doc.dump(2) << "\n";
  } else if (fmt == Format::csv) {
    out << csv_row({"n", "t", "skipped", "optimum", "matches_canonical"});
    out << csv_row({std::to_string(r.n), std::to_string(r.t), "false",
                    std::to_string(r.optimum), bool_str(r.matches_canonical)});
  } else {
    out << "maximum " << r.t << "-intersecting family at n=" << r.n << ": " << r.optimum
        << (r.matches_canonical ? " (canonical witness)" : " (non-canonical witness)") << "\n";
    for (const PerfectMatching& m : r.witness) out << "  " << m.str() << "\n";
    out << "elapsed: " << r.elapsed_ms << " ms\n";
  }
}

inline void run_derange(const RunConfig& cfg, Format fmt, std::ostream& out) {
  if (cfg.n < 0) throw domain_error("derange: need n >= 0");
  if (cfg.t < 1 || cfg.t > std::max(cfg.n, 1))
    throw domain_error("derange: need 1 <= t <= n");
  const Int count = derangement_count(cfg.n, cfg.t);
  if (fmt == Format::csv) {
    out << csv_row({"n", "t", "count"});
    out << csv_row({std::to_string(cfg.n), std::to_string(cfg.t), count.str()});
  } else if (fmt == Format::json) {
    ordered_json doc;
    doc["command"] = "derange";
    doc["n"] = cfg.n;
    doc["t"] = cfg.t;
    doc["count"] = count.str();
    out << doc.dump(2) << "\n";
  } else {
    out << count.str() << "\n";
  }
}

inline void run_oracle(const RunConfig& cfg, Format fmt, std::ostream& out) {
  if (cfg.n < 1) throw domain_error("oracle: need n >= 1");
  const RationalMatrix z = zonal_character_table(cfg.n);
  RationalMatrix table(z.row_labels, z.col_labels);
  for (int i = 0; i < z.rows(); ++i)
    for (int j = 0; j < z.cols(); ++j) {
      table.at(i, j) = spherical_oracle(z.row_labels[static_cast<std::size_t>(i)],
                                        z.col_labels[static_cast<std::size_t>(j)], cfg.n);
      if (table.at(i, j) != z.at(i, j))
        throw internal_error("oracle: disagreement with the zonal table at (" +
                             z.row_labels[static_cast<std::size_t>(i)].str() + "),(" +
                             z.col_labels[static_cast<std::size_t>(j)].str() + ")");
    }
  if (fmt == Format::csv) {
    emit_matrix_csv(out, table);
  } else if (fmt == Format::json) {
    ordered_json doc;
    doc["command"] = "oracle";
    doc["n"] = cfg.n;
    doc["agrees"] = true;
    doc["table"] = matrix_to_json(table);
    out << doc.dump(2) << "\n";
  } else {
    emit_matrix_pretty(out, table);
    out << "AGREES: zonal table\n";
  }
}

}  // namespace cli_detail

inline RunResult run(const RunConfig& cfg) {
  RunResult res;
  std::ostringstream out;
  try {
    const Format fmt = cfg.format_set ? cfg.format : cli_detail::default_format(cfg.command);
    switch (cfg.command) {
      case Command::partitions: cli_detail::run_partitions(cfg, fmt, out); break;
      case Command::matchings: cli_detail::run_matchings(cfg, fmt, out); break;
      case Command::matrix: cli_detail::run_matrix(cfg, fmt, out); break;
      case Command::scheme: cli_detail::run_scheme(cfg, out); break;
      case Command::certify: res.code = cli_detail::run_certify(cfg, fmt, out); break;
      case Command::scan: cli_detail::run_scan(cfg, fmt, out); break;
      case Command::brute: cli_detail::run_brute(cfg, fmt, out); break;
      case Command::derange: cli_detail::run_derange(cfg, fmt, out); break;
      case Command::oracle: cli_detail::run_oracle(cfg, fmt, out); break;
    }
    res.out = out.str();
  } catch (const internal_error& e) {
    res.code = 70;
    res.err = std::string("internal error: ") + e.what() + "\n";
  } catch (const domain_error& e) {
    res.code = 1;
    res.err = std::string("error: ") + e.what() + "\n";
  } catch (const resource_error& e) {
    res.code = 1;
    res.err = std::string("error: ") + e.what() + "\n";
  }
  return res;
}

}  // namespace zs
