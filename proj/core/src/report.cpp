#include "stepup/report.hpp"

#include <ostream>

namespace stepup {

namespace {

// keep the k=v records single-line and parseable
std::string sanitize(const std::string& s) {
    std::string out = s;
    for (auto& c : out) {
        if (c == '\n' || c == '\r') c = ' ';
    }
    return out;
}

}  // namespace

void PropertyReport::add(CheckItem item) {
    if (!item.pass) {
        pass = false;
        if (!first_counterexample) first_counterexample = item.name + ": " + item.observed;
    }
    items.push_back(std::move(item));
}

void PropertyReport::add_pass(const std::string& name, const std::string& observed,
                              const std::string& bound) {
    add(CheckItem{name, true, observed, bound, ""});
}

void PropertyReport::add_fail(const std::string& name, const std::string& observed,
                              const std::string& bound, const std::string& note) {
    add(CheckItem{name, false, observed, bound, note});
}

void PropertyReport::add_context(const std::string& key, const std::string& value) {
    context.emplace_back(key, value);
}

void PropertyReport::merge(const PropertyReport& other) {
    for (const auto& it : other.items) add(it);
    for (const auto& kv : other.context) context.push_back(kv);
}

void PropertyReport::write_structured(std::ostream& os) const {
    os << "report schema=1 suite=" << sanitize(suite);
    if (!profile.empty()) os << " profile=" << sanitize(profile);
    os << "\n";
    for (const auto& [k, v] : context)
        os << "context key=" << sanitize(k) << " value=" << sanitize(v) << "\n";
    for (const auto& it : items) {
        os << "check name=" << sanitize(it.name) << " pass=" << (it.pass ? 1 : 0);
        if (!it.observed.empty()) os << " observed=" << sanitize(it.observed);
        if (!it.bound.empty()) os << " bound=" << sanitize(it.bound);
        if (!it.note.empty()) os << " note=" << sanitize(it.note);
        os << "\n";
    }
    std::size_t failures = 0;
    for (const auto& it : items)
        if (!it.pass) ++failures;
    os << "summary pass=" << (pass ? 1 : 0) << " checks=" << items.size()
       << " failures=" << failures << "\n";
}

void PropertyReport::write_human(std::ostream& os) const {
    os << "== " << suite;
    if (!profile.empty()) os << " (profile " << profile << ")";
    os << " ==\n";
    for (const auto& [k, v] : context) os << "   " << k << " = " << v << "\n";
    for (const auto& it : items) {
        os << (it.pass ? "  [ok]   " : "  [FAIL] ") << it.name;
        if (!it.observed.empty()) os << ": observed " << it.observed;
        if (!it.bound.empty()) os << " vs bound " << it.bound;
        if (!it.note.empty()) os << "  (" << it.note << ")";
        os << "\n";
    }
    os << (pass ? "PASS" : "FAIL") << " (" << items.size() << " checks)\n";
}

}  // namespace stepup
