#include "lfree/labeler.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace lfree::labeler {

LinearForm& LinearForm::add(VarId v, const Rat& coeff) {
    auto it = terms.find(v);
    if (it == terms.end()) {
        if (coeff != 0) terms[v] = coeff;
    } else {
        it->second += coeff;
        if (it->second == 0) terms.erase(it);
    }
    return *this;
}

LinearForm& LinearForm::add(const LinearForm& other, const Rat& scale) {
    for (const auto& [v, c] : other.terms) add(v, c * scale);
    constant += other.constant * scale;
    return *this;
}

LinearForm& LinearForm::scale(const Rat& s) {
    if (s == 0) {
        terms.clear();
        constant = 0;
        return *this;
    }
    for (auto& [v, c] : terms) c *= s;
    constant *= s;
    return *this;
}

Rat LinearForm::evaluate(const std::map<VarId, Int>& assignment) const {
    Rat out = constant;
    for (const auto& [v, c] : terms) {
        auto it = assignment.find(v);
        if (it == assignment.end())
            throw InternalInvariantError("evaluating form with unassigned variable");
        out += c * it->second;
    }
    return out;
}

bool is_identically_zero(const LinearForm& f) {
    return f.terms.empty() && f.constant == 0;
}

LinearForm reduce_form(const LinearForm& form,
                       const std::map<VarId, LinearForm>& subs) {
    LinearForm out;
    out.constant = form.constant;
    for (const auto& [v, c] : form.terms) {
        auto it = subs.find(v);
        if (it == subs.end())
            out.add(v, c);
        else
            out.add(it->second, c);
    }
    return out;
}

LinearForm normalized(const LinearForm& f) {
    if (is_identically_zero(f)) return f;
    Int lcm = den(f.constant);
    for (const auto& [v, c] : f.terms)
        lcm = boost::multiprecision::lcm(lcm, den(c));
    Int content = boost::multiprecision::abs(num(f.constant) * (lcm / den(f.constant)));
    for (const auto& [v, c] : f.terms)
        content = boost::multiprecision::gcd(
            content, boost::multiprecision::abs(num(c) * (lcm / den(c))));
    Rat s(lcm, content);
    const Rat& lead = f.terms.empty() ? f.constant : f.terms.begin()->second;
    if (lead < 0) s = -s;
    LinearForm out = f;
    out.scale(s);
    return out;
}

namespace {

std::string form_key(const LinearForm& f) {
    std::ostringstream os;
    os << f.constant.str();
    for (const auto& [v, c] : f.terms) os << '|' << v << ':' << c.str();
    return os.str();
}

}  // namespace

bool add_form(ConstraintSystem& system, const LinearForm& reduced,
              const LinearForm& original) {
    if (is_identically_zero(reduced))
        throw InternalInvariantError("identically-zero form added to system");
    auto key = form_key(normalized(reduced));
    if (system.form_index.count(key)) return false;
    system.form_index[key] = system.nonzero_forms.size();
    system.nonzero_forms.push_back(reduced);
    system.original_forms.push_back(original);
    return true;
}

namespace {

struct Candidates {
    // yields successive candidate values for one variable
    const Schedule& sched;
    const Congruence* cong;
    Int block_k;   // Block: multiplier of base already consumed
    Int current;   // Window/Ascend cursor
    bool done = false;

    Candidates(const Schedule& s, const Congruence* c, const Int& prev_block_k)
        : sched(s), cong(c), block_k(prev_block_k) {
        if (sched.kind == Schedule::Kind::Window) {
            current = ceil_rat(sched.center - sched.radius);
            align_up();
        } else if (sched.kind == Schedule::Kind::Ascend) {
            current = ceil_rat(sched.center);
            align_up();
        }
    }

    void align_up() {
        if (!cong) return;
        Int rem = (current - cong->residue) % cong->modulus;
        if (rem < 0) rem += cong->modulus;
        if (rem != 0) current += cong->modulus - rem;
    }

    std::optional<Int> next() {
        switch (sched.kind) {
            case Schedule::Kind::Block: {
                ++block_k;
                Int v = block_k * sched.base;
                if (cong) {
                    // congruences are not combined with block mode today
                    throw InternalInvariantError("congruence on block schedule");
                }
                return v;
            }
            case Schedule::Kind::Window: {
                if (current > floor_rat(sched.center + sched.radius))
                    return std::nullopt;
                Int v = current;
                current += cong ? cong->modulus : Int(1);
                return v;
            }
            case Schedule::Kind::Ascend: {
                Int v = current;
                current += cong ? cong->modulus : Int(1);
                return v;
            }
        }
        return std::nullopt;
    }
};

}  // namespace

std::map<VarId, Int> assign_greedy(const ConstraintSystem& system) {
    // position of each free variable in assignment order
    std::map<VarId, std::size_t> position;
    for (std::size_t i = 0; i < system.variables.size(); ++i)
        position[system.variables[i]] = i;

    // forms become checkable once their last free variable is assigned
    std::vector<std::vector<std::size_t>> deciding(system.variables.size());
    for (std::size_t fi = 0; fi < system.nonzero_forms.size(); ++fi) {
        const auto& f = system.nonzero_forms[fi];
        if (f.terms.empty()) {
            if (f.constant == 0)
                throw InternalInvariantError("constant form is zero");
            continue;
        }
        std::size_t last = 0;
        for (const auto& [v, c] : f.terms) {
            auto it = position.find(v);
            if (it == position.end())
                throw InternalInvariantError("reduced form mentions unscheduled variable");
            last = std::max(last, it->second);
        }
        deciding[last].push_back(fi);
    }

    std::map<VarId, Int> values;
    Int block_k = 0;
    for (std::size_t i = 0; i < system.variables.size(); ++i) {
        const VarId var = system.variables[i];
        auto sit = system.schedules.find(var);
        if (sit == system.schedules.end())
            throw PreconditionError("schedule missing for variable");
        auto cit = system.congruences.find(var);
        const Congruence* cong =
            cit == system.congruences.end() ? nullptr : &cit->second;
        Candidates cand(sit->second, cong, block_k);

        // each determined form forbids at most one candidate value
        const std::size_t tries = deciding[i].size() + 1;
        bool found = false;
        for (std::size_t attempt = 0; attempt < tries && !found; ++attempt) {
            auto v = cand.next();
            if (!v) break;
            values[var] = *v;
            found = true;
            for (std::size_t fi : deciding[i]) {
                if (system.nonzero_forms[fi].evaluate(values) == 0) {
                    found = false;
                    break;
                }
            }
            if (!found) values.erase(var);
        }
        if (!found)
            throw InternalInvariantError("label domain exhausted for variable " +
                                         std::to_string(var));
        if (sit->second.kind == Schedule::Kind::Block) block_k = cand.block_k;
    }

    // dependent values, which must come out integral
    for (const auto& [var, body] : system.substitutions) {
        Rat v = body.evaluate(values);
        if (!is_integer(v))
            throw InternalInvariantError("dependent label is not an integer");
        values[var] = num(v);
    }

    // soundness: reduced and original forms agree, and none vanishes
    for (std::size_t fi = 0; fi < system.nonzero_forms.size(); ++fi) {
        Rat reduced_v = system.nonzero_forms[fi].evaluate(values);
        if (reduced_v == 0)
            throw InternalInvariantError("nonzero form evaluated to zero");
        if (fi < system.original_forms.size()) {
            Rat original_v = system.original_forms[fi].evaluate(values);
            if (original_v != reduced_v)
                throw InternalInvariantError("original/reduced form mismatch");
        }
    }
    return values;
}

std::string debug_json(const ConstraintSystem& system) {
    nlohmann::json j;
    j["variables"] = nlohmann::json::array();
    for (VarId v : system.variables) {
        auto it = system.names.find(v);
        j["variables"].push_back(it == system.names.end() ? std::to_string(v)
                                                          : it->second);
    }
    auto form_str = [&](const LinearForm& f) {
        std::ostringstream os;
        bool first = true;
        for (const auto& [v, c] : f.terms) {
            if (!first) os << " + ";
            first = false;
            auto it = system.names.find(v);
            os << c << "*"
               << (it == system.names.end() ? std::to_string(v) : it->second);
        }
        if (f.constant != 0 || first) {
            if (!first) os << " + ";
            os << f.constant;
        }
        return os.str();
    };
    j["nonzero_forms"] = nlohmann::json::array();
    for (const auto& f : system.nonzero_forms)
        j["nonzero_forms"].push_back(form_str(f));
    j["substitutions"] = nlohmann::json::object();
    for (const auto& [v, body] : system.substitutions) {
        auto it = system.names.find(v);
        j["substitutions"][it == system.names.end() ? std::to_string(v)
                                                    : it->second] =
            form_str(body);
    }
    return j.dump(2);
}

}  // namespace lfree::labeler
