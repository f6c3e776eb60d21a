#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace stepup {

// One verified statement: an observed quantity against the bound it must
// satisfy. `bound` is free-form text ("<= 4", ">= 0.51*C(x,2)", ...) so a
// report line stays readable without re-deriving the context.
struct CheckItem {
    std::string name;
    bool pass = true;
    std::string observed;
    std::string bound;
    std::string note;
};

// Shared result carrier for every verifier in the library. Serializes to
// line-delimited key=value records (schema v1); the human rendering is
// derived from the same data.
struct PropertyReport {
    std::string suite;
    std::string profile;
    bool pass = true;
    std::vector<CheckItem> items;
    std::vector<std::pair<std::string, std::string>> context;  // budgets, seeds, params
    std::optional<std::string> first_counterexample;

    void add(CheckItem item);
    void add_pass(const std::string& name, const std::string& observed, const std::string& bound);
    void add_fail(const std::string& name, const std::string& observed, const std::string& bound,
                  const std::string& note = "");
    void add_context(const std::string& key, const std::string& value);
    void merge(const PropertyReport& other);

    void write_structured(std::ostream& os) const;
    void write_human(std::ostream& os) const;
};

}  // namespace stepup
