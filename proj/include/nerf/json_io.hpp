#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "nerf/erasure.hpp"
#include "nerf/types.hpp"

namespace nerf {

// 17 significant digits: enough to round-trip any double, and stable across
// runs so emitted documents are byte-reproducible.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";  // JSON has no inf/nan
  return format_g17(v);
}

// Append-only JSON builder with explicit structure calls; key order is
// emission order, which keeps documents deterministic.
class JsonWriter {
 public:
  const std::string& str() const { return out_; }

  JsonWriter& begin_object() { open('{'); return *this; }
  JsonWriter& end_object() { close('}'); return *this; }
  JsonWriter& begin_array() { open('['); return *this; }
  JsonWriter& end_array() { close(']'); return *this; }

  JsonWriter& key(const std::string& k) {
    comma();
    append_string(k);
    out_ += ':';
    pending_value_ = true;
    return *this;
  }

  JsonWriter& number(double v) { return token(json_number(v)); }
  JsonWriter& integer(std::int64_t v) { return token(std::to_string(v)); }
  JsonWriter& uinteger(std::uint64_t v) { return token(std::to_string(v)); }
  JsonWriter& boolean(bool v) { return token(v ? "true" : "false"); }
  JsonWriter& null() { return token("null"); }
  JsonWriter& string(const std::string& s) {
    comma();
    append_string(s);
    first_.back() = false;
    pending_value_ = false;
    return *this;
  }
  // splice a pre-serialized document
  JsonWriter& raw(const std::string& json) { return token(json); }

 private:
  void open(char ch) {
    comma();
    out_ += ch;
    first_.push_back(true);
    pending_value_ = false;
  }
  void close(char ch) {
    out_ += ch;
    first_.pop_back();
    if (!first_.empty()) first_.back() = false;
    pending_value_ = false;
  }
  void comma() {
    if (pending_value_) return;  // value directly after key
    if (!first_.empty()) {
      if (!first_.back()) out_ += ',';
      first_.back() = false;
    }
  }
  JsonWriter& token(const std::string& t) {
    comma();
    out_ += t;
    if (!first_.empty()) first_.back() = false;
    pending_value_ = false;
    return *this;
  }
  void append_string(const std::string& s) {
    out_ += '"';
    for (char ch : s) {
      switch (ch) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        case '\r': out_ += "\\r"; break;
        default:
          if ((unsigned char)ch < 0x20) {
            char esc[8];
            std::snprintf(esc, sizeof esc, "\\u%04x", ch);
            out_ += esc;
          } else {
            out_ += ch;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> first_;
  bool pending_value_ = false;
};

inline std::string certificate_to_json(const NerfCertificate& cert, const NerfQuery& q) {
  JsonWriter w;
  w.begin_object();
  w.key("query").begin_object();
  w.key("n").integer(q.n);
  w.key("N").integer(q.bigN);
  w.key("K").integer(q.bigK);
  w.key("tau0").number(q.tau0);
  w.end_object();
  w.key("field").string(to_string(cert.field));
  w.key("constant_convention").string(to_string(cert.constant_convention));
  w.key("lambda").number(cert.lambda);
  w.key("lambda_eff").number(cert.lambda_eff);
  w.key("s_p").number(cert.s_p);
  w.key("mu").number(cert.mu);
  w.key("bigC").number(cert.bigC);
  w.key("ell").number(cert.ell);
  w.key("t_star").number(cert.t_star);
  w.key("c").number(cert.c);
  w.key("c_tilde").number(cert.c_tilde);
  w.key("alpha").number(cert.alpha);
  w.key("beta").number(cert.beta);
  w.key("log_failure_prob").number(cert.log_failure_prob);
  w.key("failure_prob_bound").number(std::exp(std::min(cert.log_failure_prob, 0.0)));
  w.end_object();
  return w.str();
}

inline std::string report_to_json(const ErasureReport& r) {
  JsonWriter w;
  w.begin_object();
  w.key("mode").string(r.mode == ReportMode::Exhaustive ? "exhaustive" : "sampled");
  w.key("total").uinteger(r.total);
  w.key("worst_condition").number(r.worst_condition);
  w.key("worst_pattern").begin_array();
  for (std::int64_t i : r.worst_pattern) w.integer(i);
  w.end_array();
  w.key("min_sigma_min").number(r.min_sigma_min);
  w.key("max_sigma_max").number(r.max_sigma_max);
  w.key("violations").integer(r.violations);
  w.key("quantiles").begin_object();
  w.key("q50").number(r.quantiles.q50);
  w.key("q90").number(r.quantiles.q90);
  w.key("q99").number(r.quantiles.q99);
  w.end_object();
  if (r.seed)
    w.key("seed").uinteger(*r.seed);
  else
    w.key("seed").null();
  w.end_object();
  return w.str();
}

}  // namespace nerf
