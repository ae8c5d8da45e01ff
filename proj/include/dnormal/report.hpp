#pragma once

#include <string>
#include <vector>

namespace dnormal {

/// One verified property inside a certificate.
struct CheckItem {
  std::string label;
  bool pass = false;
  std::string detail;  // witnesses, counterexamples, counts
};

/// A structured pass/fail certificate for a single check
/// (normality, Delta-normality, filtration, family construction, ...).
struct CertificateReport {
  std::string subject;
  bool pass = true;
  std::vector<CheckItem> items;

  void add(const std::string& label, bool ok, const std::string& detail = "") {
    items.push_back({label, ok, detail});
    pass = pass && ok;
  }

  /// First failing item's detail, or empty when everything passed.
  std::string first_failure() const {
    for (const auto& it : items)
      if (!it.pass) return it.label + (it.detail.empty() ? "" : (": " + it.detail));
    return "";
  }
};

}  // namespace dnormal
