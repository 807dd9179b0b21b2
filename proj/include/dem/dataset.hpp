#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Core data model: patients, covariate vectors and the L1 distance
// primitive. Covariate entries are stored in a canonical decimal/token
// form so that equality is bit-stable and distance zero coincides with
// canonical equality.

namespace dem {

class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Group { A, B };

inline const char* group_name(Group g) { return g == Group::A ? "A" : "B"; }

enum class ColumnKind { Numeric, Token };

inline std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

// Canonical decimal form: optional sign, no leading zeros, no trailing
// fractional zeros, "-0" collapses to "0". Rejects anything that is not
// a plain decimal literal (no exponents).
inline std::string canonical_numeric(std::string_view raw) {
  std::string s = trim(raw);
  if (s.empty()) throw invalid_input("empty numeric covariate entry");

  bool negative = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    negative = (s[i] == '-');
    ++i;
  }
  std::string int_part, frac_part;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) int_part += s[i++];
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) frac_part += s[i++];
  }
  if (i != s.size() || (int_part.empty() && frac_part.empty()))
    throw invalid_input("not a decimal number: '" + std::string(raw) + "'");

  // strip leading integer zeros and trailing fractional zeros
  std::size_t nz = int_part.find_first_not_of('0');
  int_part = (nz == std::string::npos) ? "" : int_part.substr(nz);
  while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();

  if (int_part.empty() && frac_part.empty()) return "0";
  std::string out;
  if (negative) out += '-';
  out += int_part.empty() ? "0" : int_part;
  if (!frac_part.empty()) {
    out += '.';
    out += frac_part;
  }
  return out;
}

struct CovariateEntry {
  std::string canonical;
  double numeric = 0.0;
  bool is_numeric = false;

  static CovariateEntry make_numeric(std::string_view raw) {
    CovariateEntry e;
    e.canonical = canonical_numeric(raw);
    e.numeric = std::strtod(e.canonical.c_str(), nullptr);
    e.is_numeric = true;
    return e;
  }
  static CovariateEntry make_token(std::string_view raw) {
    CovariateEntry e;
    e.canonical = trim(raw);
    if (e.canonical.empty()) throw invalid_input("empty token covariate entry");
    return e;
  }

  friend bool operator==(const CovariateEntry& a, const CovariateEntry& b) {
    return a.canonical == b.canonical;
  }
  friend auto operator<=>(const CovariateEntry& a, const CovariateEntry& b) {
    return a.canonical <=> b.canonical;
  }
};

using CovariateVector = std::vector<CovariateEntry>;

// Joins canonical entries with a separator that cannot appear in trimmed
// cell content, giving a flat key usable in associative containers.
inline std::string canonical_key(const CovariateVector& cv) {
  std::string key;
  for (const auto& e : cv) {
    key += e.canonical;
    key += '\x1f';
  }
  return key;
}

struct Patient {
  std::string id;
  Group group = Group::A;
  CovariateVector covariates;
  std::string outcome;
};

struct Dataset {
  std::vector<Patient> group_a;
  std::vector<Patient> group_b;
  std::vector<std::string> covariate_names;
  std::vector<std::string> outcome_domain;  // empty means unconstrained
  std::string positive_outcome = "1";
};

inline double l1_distance(const CovariateVector& p, const CovariateVector& q) {
  if (p.size() != q.size())
    throw invalid_input("covariate dimension mismatch: " + std::to_string(p.size()) +
                        " vs " + std::to_string(q.size()));
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].is_numeric && q[i].is_numeric) {
      d += std::abs(p[i].numeric - q[i].numeric);
    } else {
      d += (p[i].canonical == q[i].canonical) ? 0.0 : 1.0;
    }
  }
  return d;
}

inline double l1_distance(const Patient& p, const Patient& q) {
  return l1_distance(p.covariates, q.covariates);
}

struct Violation {
  enum class Kind { DuplicateId, DimensionMismatch, OutcomeDomain };
  Kind kind;
  Group group;
  std::size_t position;  // index within the group
  std::string detail;
};

// Pure structural validation; violations are data, not failures.
inline std::vector<Violation> validate_dataset(const Dataset& d) {
  std::vector<Violation> out;
  const std::size_t dim = d.covariate_names.empty()
                              ? (d.group_a.empty() ? 0 : d.group_a.front().covariates.size())
                              : d.covariate_names.size();
  std::vector<std::string> seen;
  auto check_group = [&](const std::vector<Patient>& group, Group g) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      const Patient& p = group[i];
      seen.push_back(p.id);
      if (p.covariates.size() != dim) {
        out.push_back({Violation::Kind::DimensionMismatch, g, i,
                       "patient '" + p.id + "' has " + std::to_string(p.covariates.size()) +
                           " covariates, expected " + std::to_string(dim)});
      }
      if (!d.outcome_domain.empty() &&
          std::find(d.outcome_domain.begin(), d.outcome_domain.end(), p.outcome) ==
              d.outcome_domain.end()) {
        out.push_back({Violation::Kind::OutcomeDomain, g, i,
                       "patient '" + p.id + "' outcome '" + p.outcome + "' not in domain"});
      }
    }
  };
  check_group(d.group_a, Group::A);
  check_group(d.group_b, Group::B);

  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 1; i < seen.size(); ++i) {
    if (seen[i] == seen[i - 1] && (i == 1 || seen[i] != seen[i - 2])) {
      out.push_back({Violation::Kind::DuplicateId, Group::A, 0,
                     "duplicate patient id '" + seen[i] + "'"});
    }
  }
  return out;
}

}  // namespace dem
