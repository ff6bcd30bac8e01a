#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lfree/numeric.hpp"

namespace lfree::labeler {

using VarId = int;

// Rational linear form over variables plus a constant. Zero coefficients are
// never stored; the identically-zero form has no terms and zero constant.
struct LinearForm {
    std::map<VarId, Rat> terms;
    Rat constant{0};

    static LinearForm var(VarId v) {
        LinearForm f;
        f.terms[v] = 1;
        return f;
    }
    static LinearForm value(const Rat& c) {
        LinearForm f;
        f.constant = c;
        return f;
    }

    LinearForm& add(VarId v, const Rat& coeff);
    LinearForm& add(const LinearForm& other, const Rat& scale = 1);
    LinearForm& scale(const Rat& s);

    bool mentions(VarId v) const { return terms.count(v) != 0; }
    Rat evaluate(const std::map<VarId, Int>& assignment) const;
};

bool is_identically_zero(const LinearForm& f);

// Substitutes every dependent variable occurring in `form` by its body.
// Bodies must mention only free variables (acyclic by construction).
LinearForm reduce_form(const LinearForm& form,
                       const std::map<VarId, LinearForm>& subs);

struct Congruence {
    Int residue;
    Int modulus;  // positive
};

// Per-variable value domain for the greedy assignment.
struct Schedule {
    enum class Kind {
        Block,   // multiples of `base`, scanned upward from the previous label
        Window,  // integers in [center - radius, center + radius]
        Ascend,  // all integers of the congruence class, smallest first
    };
    Kind kind = Kind::Block;
    Int base{1};            // Block: step (may be negative); |base| used for order
    Rat center{0};          // Window
    Int radius{0};          // Window
    bool monotone = true;   // Block: values strictly increase in |.|
};

struct ConstraintSystem {
    std::vector<VarId> variables;  // free variables, in assignment order
    std::map<VarId, LinearForm> substitutions;  // dependent -> form over free vars
    std::vector<LinearForm> nonzero_forms;      // reduced; each must evaluate != 0
    // representative unreduced originals, index-aligned with nonzero_forms
    std::vector<LinearForm> original_forms;
    std::map<VarId, Congruence> congruences;
    std::map<VarId, Schedule> schedules;
    std::map<VarId, std::string> names;  // debug only
    std::map<std::string, std::size_t> form_index;  // dedupe on normalized key
};

// First-fit greedy assignment; deterministic. Returns values for free and
// dependent variables. Throws InternalInvariantError if a domain exhausts or
// a dependent value is non-integral.
std::map<VarId, Int> assign_greedy(const ConstraintSystem& system);

// Canonical scaling: integral coefficients with content 1 and positive
// leading coefficient. Scaling preserves the root set, so deduplicating on
// the normalized form is sound.
LinearForm normalized(const LinearForm& f);

// Deduplicating insert of an already-reduced nonzero form; returns true when
// the form is new. `original` is kept as the pre-substitution representative.
bool add_form(ConstraintSystem& system, const LinearForm& reduced,
              const LinearForm& original);

std::string debug_json(const ConstraintSystem& system);

}  // namespace lfree::labeler
