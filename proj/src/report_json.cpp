#include "gpdkit/report_json.hpp"

#include <cstdio>

namespace gpdkit {

std::string input_digest(const std::string& text) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ordered_json check_to_json(const CheckResult& c) {
  ordered_json j;
  j["check"] = c.check;
  j["status"] = to_string(c.status);
  if (!c.witness.empty()) j["witness"] = c.witness;
  if (!c.note.empty()) j["note"] = c.note;
  if (c.count > 0) j["count"] = c.count;
  return j;
}

ordered_json report_to_json(const ValidationReport& rep) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : rep.checks()) arr.push_back(check_to_json(c));
  return arr;
}

ordered_json make_envelope(const std::string& digest) {
  ordered_json j;
  j["tool"] = "gpdkit";
  j["version"] = kToolVersion;
  j["input_digest"] = digest;
  j["checks"] = ordered_json::array();
  return j;
}

}  // namespace gpdkit
