// Command-line front end: solve mean-payoff games, run the game reductions,
// and compute/check equilibria of repeated alternating-move games.
//
// Exit codes: 0 success, 1 input error, 2 infeasible or refuted,
// 3 internal invariant failure.

#include "mpg/equilibrium.hpp"
#include "mpg/io.hpp"
#include "mpg/reductions.hpp"
#include "mpg/simulate.hpp"
#include "mpg/solver.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

mpg::Rat rat_arg(const std::string& text, const char* what) {
    auto r = mpg::parse_rat(text);
    if (!r) throw std::invalid_argument(std::string("malformed rational for ") + what + ": " + text);
    return *r;
}

mpg::MeanPayoffGame load_mpg(const std::string& path) {
    mpg::ParsedGraph parsed = mpg::parse_graph(slurp(path));
    return mpg::MeanPayoffGame(std::move(parsed.graph), parsed.flags);
}

int run(int argc, char** argv) {
    CLI::App app{"Mean-payoff game solver and repeated alternating-move game equilibria"};
    app.require_subcommand(1);

    std::string graph_path, game_path, report_path, to, threshold_text = "0";
    std::string eps_text, delta_text, checkpoints_text;
    long long horizon = 100000;

    auto* values = app.add_subcommand("values", "Exact per-vertex game values");
    values->add_option("graph", graph_path, "graph file")->required();

    auto* winner_cmd = app.add_subcommand("winner", "Winner against a threshold");
    winner_cmd->add_option("graph", graph_path, "graph file")->required();
    winner_cmd->add_option("--threshold", threshold_text, "threshold p/q")->required();

    auto* reduce = app.add_subcommand("reduce", "Transform games and graphs");
    reduce->add_option("input", graph_path, "input file")->required();
    reduce->add_option("--to", to, "mpg|alt|normalized|undirected|gamegraph")->required();

    auto* equilibrium = app.add_subcommand("equilibrium", "Welfare-optimal exact equilibrium");
    equilibrium->add_option("game", game_path, "game file")->required();

    auto* fptas = app.add_subcommand("fptas", "Approximately optimal eps-equilibrium");
    fptas->add_option("game", game_path, "game file")->required();
    fptas->add_option("--eps", eps_text, "eps p/q")->required();
    fptas->add_option("--delta", delta_text, "delta p/q")->required();

    auto* folk = app.add_subcommand("folk", "Baseline guarantee-strategy equilibrium");
    folk->add_option("game", game_path, "game file")->required();

    auto* gadget = app.add_subcommand("gadget", "Three-player hardness gadget of a zero-sum game");
    gadget->add_option("game", game_path, "zero-sum game file")->required();

    auto* simulate = app.add_subcommand("simulate", "Finite-horizon schedule simulation");
    simulate->add_option("report", report_path, "report file")->required();
    simulate->add_option("--horizon", horizon, "number of rounds");
    simulate->add_option("--checkpoints", checkpoints_text, "comma-separated rounds");

    auto* certify = app.add_subcommand("certify", "Exact equilibrium certification");
    certify->add_option("game", game_path, "game file")->required();
    certify->add_option("report", report_path, "report file")->required();
    certify->add_option("--eps", eps_text, "eps p/q")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (values->parsed()) {
        mpg::MeanPayoffGame game = load_mpg(graph_path);
        mpg::ValueTable table = mpg::exact_values(game);
        for (size_t v = 0; v < table.values.size(); ++v)
            std::cout << "v " << v << " value=" << mpg::format_rat(table.values[v]) << "\n";
    } else if (winner_cmd->parsed()) {
        mpg::MeanPayoffGame game = load_mpg(graph_path);
        mpg::Winner w = mpg::winner(game, rat_arg(threshold_text, "--threshold"));
        std::cout << (w == mpg::Winner::MaxWins ? "MaxWins" : "MinWins") << "\n";
    } else if (reduce->parsed()) {
        if (to == "mpg") {
            std::cout << mpg::emit_graph(mpg::alt_zero_sum_to_mpg(mpg::parse_game(slurp(graph_path))));
        } else if (to == "alt") {
            std::cout << mpg::emit_game(mpg::mpg_to_alt(load_mpg(graph_path)));
        } else if (to == "normalized") {
            std::cout << mpg::emit_graph(mpg::normalize(load_mpg(graph_path)));
        } else if (to == "undirected") {
            std::cout << mpg::emit_graph(mpg::directed_to_undirected(load_mpg(graph_path)));
        } else if (to == "gamegraph") {
            std::cout << mpg::emit_graph(mpg::build_game_graph(mpg::parse_game(slurp(graph_path))));
        } else {
            throw std::invalid_argument("unknown --to target: " + to);
        }
    } else if (equilibrium->parsed()) {
        std::cout << mpg::emit_report(mpg::optimal_exact_equilibrium(mpg::parse_game(slurp(game_path))));
    } else if (fptas->parsed()) {
        std::cout << mpg::emit_report(mpg::fptas_equilibrium(mpg::parse_game(slurp(game_path)),
                                                             rat_arg(eps_text, "--eps"),
                                                             rat_arg(delta_text, "--delta")));
    } else if (folk->parsed()) {
        std::cout << mpg::emit_report(mpg::folk_equilibrium(mpg::parse_game(slurp(game_path))));
    } else if (gadget->parsed()) {
        std::cout << mpg::emit_game(mpg::hardness_gadget(mpg::parse_game(slurp(game_path))));
    } else if (simulate->parsed()) {
        mpg::EquilibriumReport rep = mpg::parse_report(slurp(report_path));
        std::vector<long long> marks;
        if (!checkpoints_text.empty()) {
            std::stringstream ss{checkpoints_text};
            std::string piece;
            while (std::getline(ss, piece, ','))
                marks.push_back(std::stoll(piece));
        }
        auto points = mpg::simulate(rep.schedule, horizon, marks);
        for (const auto& p : points) {
            std::cout << "checkpoint " << p.step << ":";
            for (const auto& a : p.average) std::cout << " " << mpg::format_rat(a);
            std::cout << "\n";
        }
    } else if (certify->parsed()) {
        mpg::AlternatingGame game = mpg::parse_game(slurp(game_path));
        mpg::EquilibriumReport rep = mpg::parse_report(slurp(report_path));
        mpg::CertifyResult res = mpg::certify_equilibrium(game, rep, rat_arg(eps_text, "--eps"));
        if (res.certified) {
            std::cout << "Certified\n";
        } else {
            std::cout << "Refuted player=" << res.player << " margin=" << mpg::format_rat(res.margin)
                      << "\n";
            return 2;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::logic_error& ex) {
        std::cerr << "internal error: " << ex.what() << "\n";
        return 3;
    } catch (const std::runtime_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}
