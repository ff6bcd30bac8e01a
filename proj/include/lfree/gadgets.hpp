#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lfree/eqmodel.hpp"
#include "lfree/graphs.hpp"
#include "lfree/oracle.hpp"

namespace lfree::gadgets {

struct Role {
    enum class Kind { Vertex, EdgeLabel, EdgeLabelCopy, ULabel, PadLabel };
    Kind kind;
    std::size_t vertex = 0;  // Vertex, ULabel
    std::size_t edge = 0;    // EdgeLabel, EdgeLabelCopy, ULabel
    std::size_t i = 0;       // label index / u copy index
    std::size_t j = 0;       // EdgeLabelCopy copy
    std::size_t index = 0;   // PadLabel
};

struct GadgetSet {
    eqmodel::LinearEquation equation;  // the equation the set is built against
    std::optional<eqmodel::StandardForm> standard;
    graphs::Graph source;
    std::optional<graphs::VertexPartition> partition;

    std::vector<Int> vertex_label;  // one per vertex
    // hom / sef / inhom / count-inhom: per edge, labels[0] dependent,
    // labels[1..l-3] free
    std::vector<std::vector<Int>> edge_labels;
    // count-l4: per edge, per copy j (0-based), labels[0] dependent
    std::vector<std::vector<std::vector<Int>>> edge_copy_labels;
    // count-l3 / count-inhom: per edge, per i (0-based),
    // (u at earlier endpoint, u at later endpoint)
    std::vector<std::vector<std::pair<Int, Int>>> u_labels;

    std::map<std::string, Int> params;
    bool special_case = false;

    std::vector<Int> elements() const;       // all labels, sorted
    std::vector<Int> base_elements() const;  // vertex + edge labels only
    std::vector<std::pair<Int, Role>> roles() const;
    // expected supports of the non-trivial solution inventory
    std::vector<std::vector<Int>> expected_supports() const;
};

GadgetSet build_homogeneous(const eqmodel::StandardForm& sf,
                            const eqmodel::LinearEquation& eq,
                            const graphs::Graph& g);
GadgetSet build_homogeneous_sef(const eqmodel::StandardForm& sf,
                                const eqmodel::LinearEquation& eq,
                                const graphs::Graph& g);
GadgetSet build_inhomogeneous(const eqmodel::LinearEquation& eq,
                              const graphs::Graph& g,
                              const graphs::VertexPartition& partition,
                              const std::vector<Int>& s_prime);
GadgetSet build_counting_l3(const eqmodel::StandardForm& sf,
                            const eqmodel::LinearEquation& eq,
                            const graphs::Graph& g, std::size_t r);
GadgetSet build_counting_l4(const eqmodel::StandardForm& sf,
                            const eqmodel::LinearEquation& eq,
                            const graphs::Graph& g, std::size_t r);
GadgetSet build_counting_inhom(const eqmodel::LinearEquation& eq,
                               const graphs::Graph& g,
                               const graphs::VertexPartition& bipartition,
                               std::size_t r);

// Smallest positive shift making S + alpha L-sub-equation-free
// (equation must be homogeneous and translation-invariant, S L-free).
Int shift_to_sef(const eqmodel::LinearEquation& eq, const std::vector<Int>& s,
                 const std::vector<Int>& extra_excluded = {});

struct ExtendResult {
    std::vector<Int> multipliers;       // d_1..d_r
    std::vector<Int> pad;               // T
    std::vector<std::vector<Int>> images;        // f_i(S)
    std::vector<std::vector<Int>> prime_images;  // f_i(S')
    std::vector<Int> b;                 // A ∪ ⋃ f_i(S) ∪ T, sorted
};

ExtendResult extend(const eqmodel::LinearEquation& eq, const std::vector<Int>& a,
                    const std::vector<Int>& s, const std::vector<Int>& s_prime,
                    std::size_t r, std::size_t t,
                    const oracle::Budget& budget = {});

enum class GadgetKind { Hom, HomSef, Inhom, Count3, Count4, CountInhom };

struct VerificationReport {
    std::vector<std::pair<std::string, bool>> conditions;
    bool all_pass() const;
};

// Oracle-backed check of every construction condition.
VerificationReport verify(const GadgetSet& gs, GadgetKind kind,
                          const oracle::Budget& budget = {},
                          const std::vector<Int>& s_prime = {});

std::string to_json(const GadgetSet& gs, bool pretty = false);

}  // namespace lfree::gadgets
