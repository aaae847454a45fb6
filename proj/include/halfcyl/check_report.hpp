#pragma once

#include <string>
#include <vector>

namespace halfcyl {

/// One asserted identity: pass iff residual <= tol.
struct CheckRecord
{
  std::string name;
  /// Short statement of the identity being checked.
  std::string anchor;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  /// Tolerance-override group; assigned by the suite, not serialised.
  std::string family;
  /// Yes/no outcome; tolerance overrides do not apply.
  bool boolean = false;
};

/// Reported-only quantity (truncation leakage, measured orders, ...). Never affects the verdict.
struct Metric
{
  std::string name;
  std::string anchor;
  double value = 0.0;
};

class CheckReport
{
public:
  void check(std::string name, std::string anchor, double residual, double tol)
  {
    const bool pass = residual <= tol;
    checks_.push_back({std::move(name), std::move(anchor), residual, tol, pass, {}, false});
  }
  void add(CheckRecord record) { checks_.push_back(std::move(record)); }
  /// Boolean outcome recorded as residual 0 (true) or 1 (false) against tol 0.
  void require(std::string name, std::string anchor, bool ok)
  {
    check(std::move(name), std::move(anchor), ok ? 0.0 : 1.0, 0.0);
    checks_.back().boolean = true;
  }
  void report(std::string name, std::string anchor, double value)
  {
    metrics_.push_back({std::move(name), std::move(anchor), value});
  }

  /// Copies other's records, prefixing names and filling in an empty family.
  void append(const CheckReport& other, const std::string& prefix = "", const std::string& family = "")
  {
    for (auto c : other.checks_) {
      c.name = prefix + c.name;
      if (c.family.empty())
        c.family = family;
      checks_.push_back(std::move(c));
    }
    for (auto m : other.metrics_) {
      m.name = prefix + m.name;
      metrics_.push_back(std::move(m));
    }
  }

  bool verdict() const
  {
    for (const auto& c : checks_)
      if (!c.pass)
        return false;
    return true;
  }

  const std::vector<CheckRecord>& checks() const { return checks_; }
  std::vector<CheckRecord>& checks() { return checks_; }
  const std::vector<Metric>& metrics() const { return metrics_; }

  /// Record by exact name; nullptr if absent.
  const CheckRecord* find(const std::string& name) const
  {
    for (const auto& c : checks_)
      if (c.name == name)
        return &c;
    return nullptr;
  }
  const Metric* find_metric(const std::string& name) const
  {
    for (const auto& m : metrics_)
      if (m.name == name)
        return &m;
    return nullptr;
  }

private:
  std::vector<CheckRecord> checks_;
  std::vector<Metric> metrics_;
};

} // namespace halfcyl
