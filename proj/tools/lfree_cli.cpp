#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "lfree/jsonio.hpp"
#include "lfree/reductions.hpp"

using namespace lfree;
using nlohmann::json;

namespace {

struct Options {
    std::string equation;
    std::string graph;
    std::string set;
    std::string s_set, s_prime_set;
    std::size_t r = 1;
    std::size_t k = 0;
    std::pair<std::uint64_t, std::uint64_t> epsilon{1, 2};
    bool no_verify = false;
    bool pretty = false;
    bool timing = false;
    unsigned long long budget = 100'000'000ull;
    unsigned threads = 1;
    std::uint64_t seed = 0;
};

graphs::Graph load_graph(const std::string& arg) {
    // inline JSON/DIMACS text or a file path
    if (arg.find('{') != std::string::npos || arg.rfind("p ", 0) == 0)
        return graphs::parse_graph(arg);
    std::ifstream in(arg);
    if (!in) throw ParseError("cannot open graph file: " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return graphs::parse_graph(ss.str());
}

std::vector<Int> load_set(const std::string& arg) {
    std::string text = arg;
    if (arg.find('[') == std::string::npos) {
        std::ifstream in(arg);
        if (!in) throw ParseError("cannot open set file: " + arg);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    json j = json::parse(text);
    if (!j.is_array()) throw ParseError("a set must be a JSON array");
    std::vector<Int> out;
    for (const auto& item : j) out.push_back(int_from_json(item));
    return out;
}

void emit(const json& report, const Options& opt) {
    std::cout << (opt.pretty ? report.dump(2) : report.dump()) << "\n";
}

json report_header(const std::string& command, const Options& opt) {
    json j;
    j["command"] = command;
    json inputs = json::object();
    if (!opt.equation.empty()) inputs["equation"] = opt.equation;
    if (!opt.graph.empty()) inputs["graph"] = opt.graph;
    if (!opt.set.empty()) inputs["set"] = opt.set;
    j["inputs"] = inputs;
    return j;
}

json verification_json(const gadgets::VerificationReport& rep) {
    json v = json::object();
    for (const auto& [name, ok] : rep.conditions) v[name] = ok;
    return v;
}

int run_gadget(const std::string& kind, const Options& opt) {
    auto eq = eqmodel::parse_equation(opt.equation);
    auto g = load_graph(opt.graph);
    oracle::Budget budget{opt.budget};

    gadgets::GadgetSet gs;
    gadgets::GadgetKind vk;
    if (kind == "hom") {
        auto sf = eqmodel::standardize(eq);
        gs = gadgets::build_homogeneous(sf, eq, g);
        vk = gadgets::GadgetKind::Hom;
    } else if (kind == "hom-sef") {
        auto sf = eqmodel::standardize(eq);
        gs = gadgets::build_homogeneous_sef(sf, eq, g);
        vk = gadgets::GadgetKind::HomSef;
    } else if (kind == "inhom") {
        auto partition = graphs::find_partition(g, 3);
        gs = gadgets::build_inhomogeneous(eq, g, partition, {});
        vk = gadgets::GadgetKind::Inhom;
    } else if (kind == "count3") {
        auto sf = eqmodel::standardize(eq);
        gs = gadgets::build_counting_l3(sf, eq, g, opt.r);
        vk = gadgets::GadgetKind::Count3;
    } else if (kind == "count4") {
        auto sf = eqmodel::standardize(eq);
        gs = gadgets::build_counting_l4(sf, eq, g, opt.r);
        vk = gadgets::GadgetKind::Count4;
    } else {
        auto partition = graphs::find_partition(g, 2);
        gs = gadgets::build_counting_inhom(eq, g, partition, opt.r);
        vk = gadgets::GadgetKind::CountInhom;
    }

    json j = report_header("gadget " + kind, opt);
    j["gadget"] = json::parse(gadgets::to_json(gs));
    bool ok = true;
    if (!opt.no_verify) {
        auto rep = gadgets::verify(gs, vk, budget);
        j["verification"] = verification_json(rep);
        ok = rep.all_pass();
    }
    emit(j, opt);
    return ok ? 0 : 1;
}

int run_solve(const std::string& mode, const Options& opt) {
    auto eq = eqmodel::parse_equation(opt.equation);
    auto a = load_set(opt.set);
    oracle::Budget budget{opt.budget};

    json j = report_header("solve " + mode, opt);
    if (mode == "max") {
        auto [size, witness] = oracle::max_free_subset(eq, a, budget);
        j["size"] = size;
        j["witness"] = int_array_json(witness);
    } else if (mode == "count") {
        j["count"] = int_json(oracle::count_free_subsets(eq, a, budget));
    } else {
        j["free"] = oracle::is_free(eq, a, budget);
    }
    emit(j, opt);
    return 0;
}

int run_reduce(const std::string& kind, const Options& opt) {
    auto eq = eqmodel::parse_equation(opt.equation);
    oracle::Budget budget{opt.budget};
    json j = report_header("reduce " + kind, opt);
    bool ok = true;

    if (kind == "decision") {
        auto g = load_graph(opt.graph);
        auto inst = reductions::reduce_decision(eq, g, opt.k);
        j["threshold"] = inst.threshold;
        j["gadget"] = json::parse(gadgets::to_json(inst.set));
        if (!opt.no_verify) {
            auto want = graphs::max_independent_set(g).first >= opt.k;
            auto got = oracle::max_free_subset(eq, inst.set.elements(), budget)
                           .first >= inst.threshold;
            j["equiv_verified"] = (want == got);
            ok = want == got;
        }
    } else if (kind == "epsilon") {
        auto a = load_set(opt.set);
        auto s = load_set(opt.s_set);
        auto sp = load_set(opt.s_prime_set);
        const Rat eps = make_rat(Int(opt.epsilon.first), Int(opt.epsilon.second));
        auto inst = reductions::reduce_epsilon(eq, a, opt.k, s, sp, eps, budget);
        j["r"] = int_json(inst.r);
        j["t"] = int_json(inst.t);
        j["k_star"] = int_json(inst.k_star);
        j["a_star"] = int_json(inst.a_star);
        j["shift"] = int_json(inst.shift);
        j["target"] = int_json(inst.target);
        j["B"] = int_array_json(inst.b);
    } else {
        auto g = load_graph(opt.graph);
        reductions::CountLedger led;
        if (!eq.homogeneous())
            led = reductions::recover_count_inhom(eq, g);
        else if (eq.arity() == 3)
            led = reductions::recover_count_l3(eq, g);
        else
            led = reductions::recover_count_l4(eq, g);
        j["independent_sets"] = int_json(led.recovered);
        j["path"] = led.path;
        j["r"] = led.r;
        j["total"] = int_json(led.total);
        j["layers"] = int_array_json(led.z);
    }
    emit(j, opt);
    return ok ? 0 : 1;
}

int run_eq_info(const Options& opt) {
    auto eq = eqmodel::parse_equation(opt.equation);
    auto profile = eqmodel::classify(eq);
    json j = report_header("eq info", opt);
    j["coefficients"] = int_array_json(eq.coefficients);
    j["constant"] = int_json(eq.constant);
    j["homogeneous"] = profile.homogeneous;
    j["translation_invariant"] = profile.translation_invariant;
    j["all_same_sign"] = profile.all_same_sign;
    j["coefficient_sum"] = int_json(profile.coefficient_sum);
    j["gcd"] = int_json(profile.gcd);
    if (profile.forbidden_singleton)
        j["forbidden_singleton"] = int_json(*profile.forbidden_singleton);
    auto sf = eqmodel::standardize(eq);
    json std_j;
    std_j["a1"] = int_json(sf.a1);
    std_j["a2"] = int_json(sf.a2);
    std_j["b"] = int_array_json(sf.b);
    std_j["b0"] = int_json(sf.b0);
    std_j["flipped"] = sf.flipped;
    std_j["perm"] = sf.perm;
    j["standard_form"] = std_j;
    emit(j, opt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constructive reductions and oracles for L-free subsets"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("-e,--equation", opt.equation, "linear equation");
        cmd->add_option("--budget", opt.budget, "oracle probe budget");
        cmd->add_option("--threads", opt.threads, "worker threads");
        cmd->add_option("--seed", opt.seed, "random seed");
        cmd->add_flag("--pretty", opt.pretty, "indent JSON output");
        cmd->add_flag("--timing", opt.timing, "include wall-clock timing");
        cmd->add_flag("--no-verify", opt.no_verify, "skip oracle verification");
    };

    auto* eq_cmd = app.add_subcommand("eq", "equation utilities");
    auto* eq_info = eq_cmd->add_subcommand("info", "profile and standard form");
    add_common(eq_info);

    auto* gadget = app.add_subcommand("gadget", "graph-to-set constructions");
    std::vector<CLI::App*> gadget_kinds;
    for (const char* kind :
         {"hom", "hom-sef", "inhom", "count3", "count4", "count-inhom"}) {
        auto* cmd = gadget->add_subcommand(kind);
        add_common(cmd);
        cmd->add_option("-g,--graph", opt.graph, "graph file or inline text")
            ->required();
        cmd->add_option("-r", opt.r, "copies per edge");
        gadget_kinds.push_back(cmd);
    }

    auto* solve = app.add_subcommand("solve", "oracle queries on explicit sets");
    std::vector<CLI::App*> solve_modes;
    for (const char* mode : {"max", "count", "free"}) {
        auto* cmd = solve->add_subcommand(mode);
        add_common(cmd);
        cmd->add_option("-A,--set", opt.set, "integer set (JSON array or file)")
            ->required();
        solve_modes.push_back(cmd);
    }

    auto* reduce = app.add_subcommand("reduce", "reductions and pipelines");
    auto* red_dec = reduce->add_subcommand("decision");
    add_common(red_dec);
    red_dec->add_option("-g,--graph", opt.graph)->required();
    red_dec->add_option("-k", opt.k, "independent-set threshold")->required();
    auto* red_eps = reduce->add_subcommand("epsilon");
    add_common(red_eps);
    red_eps->add_option("-A,--set", opt.set)->required();
    red_eps->add_option("-k", opt.k)->required();
    red_eps->add_option("--S", opt.s_set, "ratio witness set")->required();
    red_eps->add_option("--Sprime", opt.s_prime_set, "maximum free subset")
        ->required();
    red_eps->add_option("--epsilon", opt.epsilon, "target ratio num den")
        ->required();
    auto* red_cnt = reduce->add_subcommand("count");
    add_common(red_cnt);
    red_cnt->add_option("-g,--graph", opt.graph)->required();

    CLI11_PARSE(app, argc, argv);

    const auto start = std::chrono::steady_clock::now();
    try {
        int rc = 2;
        if (eq_info->parsed()) rc = run_eq_info(opt);
        for (std::size_t i = 0; i < gadget_kinds.size(); ++i)
            if (gadget_kinds[i]->parsed())
                rc = run_gadget(gadget_kinds[i]->get_name(), opt);
        for (auto* cmd : solve_modes)
            if (cmd->parsed()) rc = run_solve(cmd->get_name(), opt);
        if (red_dec->parsed()) rc = run_reduce("decision", opt);
        if (red_eps->parsed()) rc = run_reduce("epsilon", opt);
        if (red_cnt->parsed()) rc = run_reduce("count", opt);
        if (opt.timing) {
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start);
            std::cerr << "elapsed_ms=" << ms.count() << "\n";
        }
        return rc;
    } catch (const std::exception& e) {
        json err;
        err["error"] = e.what();
        emit(err, opt);
        return 2;
    }
}
