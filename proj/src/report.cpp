#include "eofb/report.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "eofb/error.hpp"

namespace eofb {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::ParseError, what);
}

double number_at(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) parse_fail(std::string("missing key '") + key + "'");
  const json& x = obj.at(key);
  if (!x.is_number()) parse_fail(std::string("key '") + key + "' must be a number");
  const double d = x.get<double>();
  if (!std::isfinite(d)) parse_fail(std::string("key '") + key + "' is not finite");
  return d;
}

CovMat matrix_from_json(const json& m) {
  std::vector<double> flat;
  if (!m.is_array()) parse_fail("'matrix' must be an array");
  if (m.size() == 4 && m.front().is_array()) {
    for (const auto& row : m) {
      if (!row.is_array() || row.size() != 4) parse_fail("'matrix' rows must have 4 entries");
      for (const auto& x : row) {
        if (!x.is_number()) parse_fail("'matrix' entries must be numbers");
        flat.push_back(x.get<double>());
      }
    }
  } else if (m.size() == 16) {
    for (const auto& x : m) {
      if (!x.is_number()) parse_fail("'matrix' entries must be numbers");
      flat.push_back(x.get<double>());
    }
  } else {
    parse_fail("'matrix' must be 4x4 or 16 numbers in row-major order");
  }
  Mat4 raw;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double d = flat[static_cast<std::size_t>(4 * i + j)];
      if (!std::isfinite(d)) parse_fail("'matrix' entries must be finite");
      raw(i, j) = d;
    }
  }
  const double scale = std::max(1.0, raw.cwiseAbs().maxCoeff());
  if ((raw - raw.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    parse_fail("'matrix' is not symmetric");
  }
  return CovMat(SymMat4(raw));
}

json spectrum_json(const SympSpectrum& s) {
  return {{"mu_minus", s.mu_minus}, {"mu_plus", s.mu_plus}};
}

json value_json(const std::optional<EntanglementValue>& v, Units u) {
  return v ? json(v->in(u)) : json(nullptr);
}

const char* frame_name(Frame f) {
  switch (f) {
    case Frame::automatic: return "automatic";
    case Frame::raw: return "raw";
    case Frame::standard: return "standard";
  }
  return "raw";
}

ScanRow evaluate_point(double i1, double i2, const ScanSpec& spec, const AnalyzeOptions& opts) {
  ScanRow row;
  row.i1 = i1;
  row.i2 = i2;
  row.i3 = spec.i3;
  row.i4 = spec.i4 ? *spec.i4 : 2.0 * std::abs(spec.i3) * std::sqrt(i1 * i2);

  CovMat v;
  try {
    v = CovMat::from_standard_form(standard_form(Invariants{i1, i2, row.i3, row.i4}));
  } catch (const Error&) {
    row.status = RowStatus::skip_degenerate;
    return row;
  }
  if (!is_physical(v, opts.bounds.psd_tol)) {
    row.status = RowStatus::skip_unphysical;
    return row;
  }

  BoundOptions bo = opts.bounds;
  bo.compute_geof = bo.compute_geof && spec.compute_geof;
  const BoundReport r = bound_report(v, bo);
  row.mu_tilde_minus = ppt_eigenvalues(v).mu_minus;
  row.entangled = r.entangled;
  row.lower_natural = r.lower_natural;
  row.sigma = r.lower_sigma;
  row.geof = r.geof;
  row.eeof = r.eeof;
  row.upper_natural = r.upper_natural;
  if (r.geof_detail && !r.geof_detail->converged) {
    row.status = RowStatus::budget_exhausted;
  } else if (!r.hierarchy_ok()) {
    row.status = RowStatus::hierarchy_violation;
  }
  return row;
}

void append_number(std::string& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  out += buf;
}

}  // namespace

CovMat parse_state_document(const json& doc, double psd_tol) {
  if (!doc.is_object()) parse_fail("state document must be a JSON object");
  const int present = static_cast<int>(doc.contains("matrix")) +
                      static_cast<int>(doc.contains("standard_form")) +
                      static_cast<int>(doc.contains("invariants"));
  if (present != 1) {
    parse_fail("state document needs exactly one of 'matrix', 'standard_form', 'invariants'");
  }

  CovMat v;
  if (doc.contains("matrix")) {
    v = matrix_from_json(doc.at("matrix"));
  } else if (doc.contains("standard_form")) {
    const json& sf = doc.at("standard_form");
    v = CovMat::from_standard_form(
        {number_at(sf, "a"), number_at(sf, "b"), number_at(sf, "c1"), number_at(sf, "c2")});
  } else {
    const json& inv = doc.at("invariants");
    v = CovMat::from_standard_form(standard_form(Invariants{
        number_at(inv, "I1"), number_at(inv, "I2"), number_at(inv, "I3"), number_at(inv, "I4")}));
  }

  if (!is_physical(v, psd_tol)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "input state is not physical";
    if (min_eigenvalue(v.matrix()) > 0.0) {
      msg << ": mu_minus = " << symplectic_eigenvalues(invariants(v)).mu_minus << " < 1";
    } else {
      msg << ": covariance matrix is not positive definite";
    }
    throw Error(ErrorCode::NonPhysicalState, msg.str());
  }
  return v;
}

CovMat parse_state_text(std::string_view text, double psd_tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  return parse_state_document(doc, psd_tol);
}

json analyze(const CovMat& v, const AnalyzeOptions& opts) {
  const Units u = opts.units;
  const Invariants inv = invariants(v);
  const StandardForm sf = standard_form(inv);
  const BoundReport r = bound_report(v, opts.bounds);

  json matrix = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back(v.matrix()(i, j));
    matrix.push_back(row);
  }

  json out;
  out["units"] = u == Units::nats ? "nats" : "bits";
  out["matrix"] = matrix;
  out["invariants"] = {{"I1", inv.i1}, {"I2", inv.i2}, {"I3", inv.i3}, {"I4", inv.i4}};
  out["standard_form"] = {{"a", sf.a}, {"b", sf.b}, {"c1", sf.c1}, {"c2", sf.c2}};
  out["symplectic_eigenvalues"] = spectrum_json(symplectic_eigenvalues(inv));
  out["ppt_eigenvalues"] = spectrum_json(ppt_eigenvalues(inv));
  out["physical"] = true;
  out["entangled"] = r.entangled;

  json b;
  b["lower_natural"] = r.lower_natural.in(u);
  b["lower_sigma"] = r.lower_sigma.in(u);
  b["upper_natural"] = value_json(r.upper_natural, u);
  b["upper_searched"] = value_json(r.upper_searched, u);
  b["eeof"] = r.eeof.in(u);
  b["geof"] = value_json(r.geof, u);
  b["frame"] = frame_name(r.frame);
  b["swapped"] = r.swapped;
  b["physicality"] = {{"state", r.flags.state},
                      {"rho_bb", r.flags.rho_bb},
                      {"sigma", r.flags.sigma},
                      {"rho_aa", r.flags.rho_aa}};
  b["hierarchy_ok"] = r.hierarchy_ok();
  b["violations"] = r.hierarchy_violations;
  if (const auto diff = difference_upper_bound(v, opts.bounds)) {
    b["difference_upper"] = diff->in(u);
  } else {
    b["difference_upper"] = nullptr;
  }
  out["bounds"] = b;

  if (r.geof_detail) {
    const GeofResult& g = *r.geof_detail;
    out["geof_detail"] = {
        {"feasible", g.feasible},
        {"converged", g.converged},
        {"evaluations", g.iterations},
        {"argmin",
         {{"squeezing", g.argmin.squeezing},
          {"angle_a", g.argmin.angle_a},
          {"squeeze_a", g.argmin.squeeze_a},
          {"angle_b", g.argmin.angle_b},
          {"squeeze_b", g.argmin.squeeze_b}}}};
  } else {
    out["geof_detail"] = nullptr;
  }
  return out;
}

double Range::at(int k) const {
  if (steps <= 1) return min;
  return min + (max - min) * static_cast<double>(k) / static_cast<double>(steps - 1);
}

ScanSpec parse_scan_document(const json& doc) {
  if (!doc.is_object()) parse_fail("scan document must be a JSON object");
  ScanSpec spec;
  auto read_range = [&](const char* key, Range& r) {
    if (!doc.contains(key)) return;
    const json& j = doc.at(key);
    if (!j.is_object()) parse_fail(std::string("'") + key + "' must be an object");
    if (j.contains("min")) r.min = number_at(j, "min");
    if (j.contains("max")) r.max = number_at(j, "max");
    if (j.contains("steps")) {
      if (!j.at("steps").is_number_integer()) parse_fail("'steps' must be an integer");
      r.steps = j.at("steps").get<int>();
    }
  };
  read_range("I1", spec.i1);
  read_range("I2", spec.i2);
  if (doc.contains("I3")) spec.i3 = number_at(doc, "I3");
  if (doc.contains("I4")) {
    const json& i4 = doc.at("I4");
    if (i4.is_string()) {
      if (i4.get<std::string>() != "rule") parse_fail("'I4' must be a number or \"rule\"");
      spec.i4.reset();
    } else {
      spec.i4 = number_at(doc, "I4");
    }
  }
  if (doc.contains("geof")) {
    if (!doc.at("geof").is_boolean()) parse_fail("'geof' must be a boolean");
    spec.compute_geof = doc.at("geof").get<bool>();
  }
  validate(spec);
  return spec;
}

void validate(const ScanSpec& spec) {
  for (const Range* r : {&spec.i1, &spec.i2}) {
    if (r->steps < 1) parse_fail("scan grid is empty");
    if (!std::isfinite(r->min) || !std::isfinite(r->max) || r->min > r->max) {
      parse_fail("scan range needs finite min <= max");
    }
  }
  if (!std::isfinite(spec.i3) || (spec.i4 && !std::isfinite(*spec.i4))) {
    parse_fail("I3 and I4 must be finite");
  }
}

const char* to_string(RowStatus s) {
  switch (s) {
    case RowStatus::ok: return "ok";
    case RowStatus::skip_degenerate: return "skip_degenerate";
    case RowStatus::skip_unphysical: return "skip_unphysical";
    case RowStatus::hierarchy_violation: return "hierarchy_violation";
    case RowStatus::budget_exhausted: return "budget_exhausted";
  }
  return "ok";
}

std::vector<ScanRow> scan(const ScanSpec& spec, const AnalyzeOptions& opts, int threads) {
  validate(spec);
  const int n1 = spec.i1.steps;
  const int n2 = spec.i2.steps;
  const std::size_t total = static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);
  std::vector<ScanRow> rows(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const int i = static_cast<int>(k / static_cast<std::size_t>(n2));
      const int j = static_cast<int>(k % static_cast<std::size_t>(n2));
      rows[k] = evaluate_point(spec.i1.at(i), spec.i2.at(j), spec, opts);
    }
  };
  const int n = std::max(1, threads);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  return rows;
}

const char* const kScanCsvHeader =
    "I1,I2,I3,I4,mu_tilde_minus,entangled,eof_lower_natural,eof_sigma,geof,eeof,"
    "eof_upper_natural,physical_upper_flag,status";

std::string format_scan_csv(const std::vector<ScanRow>& rows, Units units) {
  std::string out = kScanCsvHeader;
  out += '\n';
  for (const ScanRow& r : rows) {
    append_number(out, r.i1);
    out += ',';
    append_number(out, r.i2);
    out += ',';
    append_number(out, r.i3);
    out += ',';
    append_number(out, r.i4);
    out += ',';
    if (!r.evaluated()) {
      out += "NA,NA,NA,NA,NA,NA,NA,NA,";
    } else {
      append_number(out, r.mu_tilde_minus);
      out += r.entangled ? ",1," : ",0,";
      append_number(out, r.lower_natural.in(units));
      out += ',';
      append_number(out, r.sigma.in(units));
      out += ',';
      if (r.geof) {
        append_number(out, r.geof->in(units));
      } else {
        out += "NA";
      }
      out += ',';
      append_number(out, r.eeof.in(units));
      out += ',';
      if (r.upper_natural) {
        append_number(out, r.upper_natural->in(units));
      } else {
        out += "NA";
      }
      out += r.upper_natural ? ",1," : ",0,";
    }
    out += to_string(r.status);
    out += '\n';
  }
  return out;
}

}  // namespace eofb
