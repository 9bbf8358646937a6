#include <algorithm>

#include "curvx/classify.hpp"

namespace curvx {

namespace {

struct RowSpec {
  const char* label;
  std::vector<std::string> structures;
};

// The similarity and dissimilarity lists of the Bardeen / Reissner-Nordström
// comparison, as structure names of the classifier.
const std::vector<RowSpec>& similarity_rows() {
  static const std::vector<RowSpec> rows = {
      {"Roter type", {"roter"}},
      {"Ein(2)", {"ein2"}},
      {"pseudosymmetric", {"R.R=L*Q(g,R)"}},
      {"conformal curvature 2-forms recurrent", {"curvature_2forms_recurrent[C]"}},
      {"Riemann and Weyl compatible Ricci tensor", {"ricci_compatible[R]", "ricci_compatible[C]"}},
  };
  return rows;
}

const std::vector<RowSpec>& dissimilarity_rows() {
  static const std::vector<RowSpec> rows = {
      {"vanishing scalar curvature", {"scalar_curvature_zero"}},
      {"weakly generalized recurrent", {"weakly_generalized_recurrent"}},
      {"special recurrent like, nabla R = A (x) (g^S)", {"special_recurrent_like"}},
  };
  return rows;
}

ComparisonRow make_row(const RowSpec& spec, const StructureReport& a, const StructureReport& b) {
  ComparisonRow row;
  row.label = spec.label;
  row.structures = spec.structures;
  for (const auto& name : spec.structures) {
    row.first.push_back(a.verdict(name));
    row.second.push_back(b.verdict(name));
  }
  return row;
}

}  // namespace

bool Comparison::reproduces_reference() const {
  const auto ok = [](const ComparisonRow& r) { return r.reproduced; };
  return similarities.size() == similarity_rows().size() &&
         dissimilarities.size() == dissimilarity_rows().size() && std::all_of(similarities.begin(), similarities.end(), ok) &&
         std::all_of(dissimilarities.begin(), dissimilarities.end(), ok);
}

Comparison compare_metrics(const StructureReport& a, const StructureReport& b) {
  if (a.structures.size() != b.structures.size()) throw Error("reports list different structures");
  for (std::size_t i = 0; i < a.structures.size(); ++i) {
    if (a.structures[i].name != b.structures[i].name) throw Error("reports list different structures");
  }

  Comparison c;
  c.first = a.metric;
  c.second = b.metric;
  for (std::size_t i = 0; i < a.structures.size(); ++i) {
    const Verdict va = a.structures[i].fit.verdict;
    const Verdict vb = b.structures[i].fit.verdict;
    const std::string& name = a.structures[i].name;
    if (va != vb) {
      c.differing.push_back(name);
    } else if (va == Verdict::Holds) {
      c.shared_holds.push_back(name);
    } else if (va == Verdict::Fails) {
      c.shared_fails.push_back(name);
    }
  }

  for (const auto& spec : similarity_rows()) {
    ComparisonRow row = make_row(spec, a, b);
    row.reproduced = std::all_of(row.first.begin(), row.first.end(), [](Verdict v) { return v == Verdict::Holds; }) &&
                     std::all_of(row.second.begin(), row.second.end(), [](Verdict v) { return v == Verdict::Holds; });
    c.similarities.push_back(std::move(row));
  }
  for (const auto& spec : dissimilarity_rows()) {
    ComparisonRow row = make_row(spec, a, b);
    row.reproduced = true;
    for (std::size_t i = 0; i < row.first.size(); ++i) {
      const bool split = (row.first[i] == Verdict::Holds && row.second[i] == Verdict::Fails) ||
                         (row.first[i] == Verdict::Fails && row.second[i] == Verdict::Holds);
      row.reproduced = row.reproduced && split;
    }
    c.dissimilarities.push_back(std::move(row));
  }
  return c;
}

}  // namespace curvx
