#include "mbpoly/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

namespace mbpoly {

using nlohmann::json;

namespace {

CMatrix parse_matrix(const json& j, int N, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != N * N)
    throw Error(Errc::invalid_config,
                what + ": expected row-major array of " + std::to_string(N * N) +
                    " [re, im] pairs");
  CMatrix m(N, N);
  for (int i = 0; i < N * N; ++i) {
    const json& e = j[static_cast<size_t>(i)];
    double re = 0.0, im = 0.0;
    if (e.is_array() && e.size() == 2) {
      re = e[0].get<double>();
      im = e[1].get<double>();
    } else if (e.is_number()) {
      re = e.get<double>();
    } else {
      throw Error(Errc::invalid_config, what + ": entries must be [re, im] pairs");
    }
    if (!std::isfinite(re) || !std::isfinite(im))
      throw Error(Errc::invalid_config, what + ": non-finite entry");
    m(i / N, i % N) = Complex(re, im);
  }
  return m;
}

json dump_matrix(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
  return out;
}

std::vector<CMatrix> parse_matrix_list(const json& j, int N, const std::string& what) {
  if (!j.is_array() || j.empty())
    throw Error(Errc::invalid_config, what + ": expected nonempty array of matrices");
  std::vector<CMatrix> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_matrix(j[i], N, what + "[" + std::to_string(i) + "]"));
  return out;
}

ScalingSequence default_scaling(const CoefficientFamily& fam) {
  switch (fam.kind()) {
    case FamilyKind::laguerre_christoffel:
      return ScalingSequence::paper_laguerre();
    case FamilyKind::paper_example_2:
      return ScalingSequence::paper_example_2();
    default:
      return ScalingSequence::identity(fam.dim());
  }
}

ScalingSequence parse_scaling(const json& j, int N) {
  const std::string kind = j.value("kind", "identity");
  if (kind == "identity") return ScalingSequence::identity(N);
  if (kind == "scalar_power") {
    if (!j.contains("p"))
      throw Error(Errc::invalid_config, "scaling scalar_power: missing \"p\"");
    return ScalingSequence::scalar_power(N, j["p"].get<double>());
  }
  if (kind == "paper_laguerre") return ScalingSequence::paper_laguerre();
  if (kind == "paper_example_2") return ScalingSequence::paper_example_2();
  if (kind == "custom_table") {
    if (!j.contains("D"))
      throw Error(Errc::invalid_config, "scaling custom_table: missing \"D\"");
    return ScalingSequence::custom_table(parse_matrix_list(j["D"], N, "D"));
  }
  throw Error(Errc::invalid_config, "unknown scaling kind: " + kind);
}

}  // namespace

RunConfig RunConfig::from_json(const json& j) {
  if (!j.contains("N") || !j.contains("kind"))
    throw Error(Errc::invalid_config, "config: \"N\" and \"kind\" are required");
  const int N = j["N"].get<int>();
  if (N < 1 || N > 16) throw Error(Errc::invalid_config, "config: N out of range");
  const std::string kind = j["kind"].get<std::string>();

  CoefficientFamily fam = CoefficientFamily::constant(CMatrix::Identity(N, N),
                                                      CMatrix::Zero(N, N),
                                                      CMatrix::Identity(N, N));
  if (kind == "constant") {
    if (!j.contains("A") || !j.contains("B") || !j.contains("C"))
      throw Error(Errc::invalid_config, "constant family: A, B, C required");
    fam = CoefficientFamily::constant(parse_matrix(j["A"], N, "A"),
                                      parse_matrix(j["B"], N, "B"),
                                      parse_matrix(j["C"], N, "C"));
  } else if (kind == "laguerre_christoffel") {
    if (N != 2) throw Error(Errc::invalid_config, "laguerre_christoffel: N must be 2");
    fam = CoefficientFamily::laguerre_christoffel(j.value("alpha", 0.0));
  } else if (kind == "paper_example_2") {
    if (N != 2) throw Error(Errc::invalid_config, "paper_example_2: N must be 2");
    fam = CoefficientFamily::paper_example_2();
  } else if (kind == "custom_table") {
    if (!j.contains("A") || !j.contains("B") || !j.contains("C"))
      throw Error(Errc::invalid_config, "custom_table: A, B, C tables required");
    auto As = parse_matrix_list(j["A"], N, "A");
    auto Bs = parse_matrix_list(j["B"], N, "B");
    auto Cs = parse_matrix_list(j["C"], N, "C");
    if (As.size() != Bs.size() || As.size() != Cs.size())
      throw Error(Errc::invalid_config, "custom_table: A, B, C tables must have equal length");
    std::vector<Triple> table(As.size());
    for (size_t i = 0; i < As.size(); ++i) table[i] = {As[i], Bs[i], Cs[i]};
    fam = CoefficientFamily::custom_table(std::move(table));
  } else {
    throw Error(Errc::invalid_config, "unknown family kind: " + kind);
  }

  ScalingSequence sc = j.contains("scaling") ? parse_scaling(j["scaling"], N)
                       : (j.contains("D") && kind == "custom_table")
                           ? ScalingSequence::custom_table(parse_matrix_list(j["D"], N, "D"))
                           : default_scaling(fam);

  RunConfig rc(fam, sc);
  // Echo: family part verbatim, scaling as resolved.
  json fj = j;
  fj.erase("scaling");
  rc.family_json_ = fj.dump();
  json sj;
  sj["kind"] = sc.kind_name();
  sj["start_index"] = sc.start_index();
  sj["increasing"] = sc.increasing();
  if (j.contains("scaling") && j["scaling"].contains("p")) sj["p"] = j["scaling"]["p"];
  rc.scaling_json_ = sj.dump();
  return rc;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_config, "cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(Errc::invalid_config, std::string("config parse error: ") + e.what());
  }
  return from_json(j);
}

json RunConfig::resolved() const {
  json out;
  out["family"] = json::parse(family_json_);
  out["scaling"] = json::parse(scaling_json_);
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, p);
}

std::string format_double17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, p);
}

Complex parse_complex(const std::string& s) {
  // forms: "a", "a+bi", "a-bi", "bi", "i", "-i"
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw Error(Errc::invalid_config, "empty complex literal");
  auto parse_num = [](const std::string& u) {
    if (u.empty() || u == "+") return 1.0;
    if (u == "-") return -1.0;
    size_t pos = 0;
    double v;
    try {
      v = std::stod(u, &pos);
    } catch (const std::exception&) {
      throw Error(Errc::invalid_config, "bad number in complex literal: " + u);
    }
    if (pos != u.size())
      throw Error(Errc::invalid_config, "bad number in complex literal: " + u);
    return v;
  };
  double re = 0.0, im = 0.0;
  if (t.back() == 'i' || t.back() == 'I' || t.back() == 'j') {
    t.pop_back();
    // split at the last +/- not at position 0 and not after e/E
    size_t split = std::string::npos;
    for (size_t i = t.size(); i-- > 1;) {
      if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    if (split == std::string::npos) {
      im = parse_num(t);
    } else {
      re = parse_num(t.substr(0, split));
      im = parse_num(t.substr(split));
    }
  } else {
    re = parse_num(t);
  }
  if (!std::isfinite(re) || !std::isfinite(im))
    throw Error(Errc::invalid_config, "complex literal must be finite");
  return Complex(re, im);
}

std::string format_complex(Complex z) {
  std::string s = format_double(z.real());
  if (z.imag() >= 0.0 || std::isnan(z.imag()))
    s += "+" + format_double(z.imag()) + "i";
  else
    s += format_double(z.imag()) + "i";
  return s;
}

std::uint64_t PropertyRng::next_u64() {
  // splitmix64
  state_ += 0x9E3779B97f4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double PropertyRng::uniform(double lo, double hi) {
  const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

}  // namespace mbpoly
