#include "mpg/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <vector>

namespace mpg {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> toks;
    std::string cur;
    for (char ch : line) {
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) {
                toks.push_back(cur);
                cur.clear();
            }
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) toks.push_back(cur);
    return toks;
}

long long parse_ll(const std::string& tok, int line, const char* what) {
    if (tok.empty()) throw ParseError(line, std::string("missing ") + what);
    size_t i = tok[0] == '-' ? 1 : 0;
    if (i == tok.size()) throw ParseError(line, std::string("malformed ") + what);
    long long v = 0;
    for (; i < tok.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(tok[i])))
            throw ParseError(line, std::string("malformed ") + what + " '" + tok + "'");
        v = v * 10 + (tok[i] - '0');
        if (v > (1LL << 60)) throw ParseError(line, std::string(what) + " out of range");
    }
    return tok[0] == '-' ? -v : v;
}

Int parse_big(const std::string& tok, int line, const char* what) {
    if (tok.empty()) throw ParseError(line, std::string("missing ") + what);
    Int v = 0;
    for (char ch : tok) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw ParseError(line, std::string("malformed ") + what + " '" + tok + "'");
        v = v * 10 + (ch - '0');
    }
    return v;
}

Rat parse_rat_or_throw(const std::string& tok, int line) {
    auto r = parse_rat(tok);
    if (!r) throw ParseError(line, "malformed rational '" + tok + "'");
    return *r;
}

// "key=value" -> value, enforcing the key.
std::string keyed(const std::string& tok, const char* key, int line) {
    std::string prefix = std::string(key) + "=";
    if (tok.rfind(prefix, 0) != 0)
        throw ParseError(line, std::string("expected '") + key + "=...', got '" + tok + "'");
    return tok.substr(prefix.size());
}

std::vector<Rat> parse_rat_list(const std::string& tok, int line, int expected) {
    std::vector<Rat> out;
    size_t start = 0;
    while (start <= tok.size()) {
        size_t end = tok.find(',', start);
        std::string piece =
            end == std::string::npos ? tok.substr(start) : tok.substr(start, end - start);
        out.push_back(parse_rat_or_throw(piece, line));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    if (expected >= 0 && static_cast<int>(out.size()) != expected)
        throw ParseError(line, "expected " + std::to_string(expected) + " rationals, got " +
                                   std::to_string(out.size()));
    return out;
}

std::string format_rat_list(const std::vector<Rat>& rats) {
    std::string s;
    for (size_t i = 0; i < rats.size(); ++i) {
        if (i) s += ',';
        s += format_rat(rats[i]);
    }
    return s;
}

}  // namespace

ParsedGraph parse_graph(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(1, "empty graph file");

    auto header = tokenize(lines[0]);
    if (header.size() != 4 || header[0] != "mpg")
        throw ParseError(1, "expected header 'mpg k=<dims> vertices=<m> initial=<id>'");
    const int dims = static_cast<int>(parse_ll(keyed(header[1], "k", 1), 1, "dims"));
    const int nverts = static_cast<int>(parse_ll(keyed(header[2], "vertices", 1), 1, "vertex count"));
    const int initial = static_cast<int>(parse_ll(keyed(header[3], "initial", 1), 1, "initial vertex"));
    if (dims < 1) throw ParseError(1, "dims must be >= 1");
    if (nverts < 1) throw ParseError(1, "vertex count must be >= 1");

    std::vector<int> owners(nverts, -1);
    std::vector<Edge> edges;
    std::map<std::pair<int, int>, int> edge_lines;
    MpgFlags flags;
    bool saw_flags = false;

    for (size_t li = 1; li < lines.size(); ++li) {
        const int lineno = static_cast<int>(li) + 1;
        if (lines[li].empty()) continue;
        auto toks = tokenize(lines[li]);
        if (toks[0] == "v") {
            if (toks.size() != 3) throw ParseError(lineno, "expected 'v <id> owner=<player>'");
            int id = static_cast<int>(parse_ll(toks[1], lineno, "vertex id"));
            if (id < 0 || id >= nverts) throw ParseError(lineno, "vertex id out of range");
            if (owners[id] != -1) throw ParseError(lineno, "duplicate vertex " + std::to_string(id));
            int owner = static_cast<int>(parse_ll(keyed(toks[2], "owner", lineno), lineno, "owner"));
            if (owner < 1) throw ParseError(lineno, "owner must be >= 1");
            owners[id] = owner;
        } else if (toks[0] == "e") {
            if (toks.size() != 4) throw ParseError(lineno, "expected 'e <src> <dst> w=<list>'");
            Edge e;
            e.src = static_cast<int>(parse_ll(toks[1], lineno, "edge source"));
            e.dst = static_cast<int>(parse_ll(toks[2], lineno, "edge target"));
            if (e.src < 0 || e.src >= nverts || e.dst < 0 || e.dst >= nverts)
                throw ParseError(lineno, "edge endpoint out of range");
            e.w = parse_rat_list(keyed(toks[3], "w", lineno), lineno, dims);
            auto key = std::make_pair(e.src, e.dst);
            if (edge_lines.count(key))
                throw ParseError(lineno, "duplicate edge " + std::to_string(e.src) + "->" +
                                             std::to_string(e.dst));
            edge_lines[key] = lineno;
            edges.push_back(std::move(e));
        } else if (toks[0] == "flags:") {
            if (saw_flags) throw ParseError(lineno, "duplicate flags line");
            saw_flags = true;
            if (toks.size() > 1 && dims != 1)
                throw ParseError(lineno, "flags apply to scalar games only");
            for (size_t i = 1; i < toks.size(); ++i) {
                if (toks[i] == "bipartite")
                    flags.bipartite = true;
                else if (toks[i] == "complete")
                    flags.complete_bipartite = true;
                else if (toks[i] == "undirected")
                    flags.undirected = true;
                else if (toks[i] == "normalized")
                    flags.normalized = true;
                else
                    throw ParseError(lineno, "unknown flag '" + toks[i] + "'");
            }
        } else {
            throw ParseError(lineno, "unknown line '" + toks[0] + " ...'");
        }
    }
    for (int v = 0; v < nverts; ++v)
        if (owners[v] == -1)
            throw ParseError(static_cast<int>(lines.size()),
                             "vertex " + std::to_string(v) + " was never declared");
    if (initial < 0 || initial >= nverts)
        throw ParseError(1, "initial vertex out of range");
    return {MultiWeightedGraph(dims, std::move(owners), std::move(edges), initial), flags};
}

std::string emit_graph(const MultiWeightedGraph& g, const MpgFlags& flags) {
    std::string out = "mpg k=" + std::to_string(g.dims()) +
                      " vertices=" + std::to_string(g.vertex_count()) +
                      " initial=" + std::to_string(g.initial_vertex()) + "\n";
    for (int v = 0; v < g.vertex_count(); ++v)
        out += "v " + std::to_string(v) + " owner=" + std::to_string(g.owner(v)) + "\n";
    for (const Edge& e : g.edges())
        out += "e " + std::to_string(e.src) + " " + std::to_string(e.dst) + " w=" +
               format_rat_list(e.w) + "\n";
    out += "flags:";
    if (flags.bipartite) out += " bipartite";
    if (flags.complete_bipartite) out += " complete";
    if (flags.undirected) out += " undirected";
    if (flags.normalized) out += " normalized";
    out += "\n";
    return out;
}

std::string emit_graph(const MeanPayoffGame& game) { return emit_graph(game.graph(), game.flags()); }

AlternatingGame parse_game(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(1, "empty game file");
    auto header = tokenize(lines[0]);
    if (header.size() != 3 || header[0] != "altgame")
        throw ParseError(1, "expected header 'altgame k=<k> n=<n>'");
    const int k = static_cast<int>(parse_ll(keyed(header[1], "k", 1), 1, "player count"));
    const int n = static_cast<int>(parse_ll(keyed(header[2], "n", 1), 1, "action count"));
    if (k < 1 || n < 1) throw ParseError(1, "k and n must be >= 1");
    long long profiles = 1;
    for (int i = 0; i < k; ++i) {
        profiles *= n;
        if (profiles > (1LL << 24)) throw ParseError(1, "action space too large");
    }

    std::vector<std::vector<Rat>> u(k, std::vector<Rat>(profiles));
    std::vector<bool> seen(profiles, false);
    std::vector<long long> radix(k, 1);
    for (int j = k - 2; j >= 0; --j) radix[j] = radix[j + 1] * n;

    for (size_t li = 1; li < lines.size(); ++li) {
        const int lineno = static_cast<int>(li) + 1;
        if (lines[li].empty()) continue;
        auto toks = tokenize(lines[li]);
        if (toks[0] != "u") throw ParseError(lineno, "unknown line '" + toks[0] + " ...'");
        if (static_cast<int>(toks.size()) != k + 3 || toks[k + 1] != "=")
            throw ParseError(lineno, "expected 'u <a1> ... <ak> = <r1>,...,<rk>'");
        long long vec = 0;
        for (int j = 0; j < k; ++j) {
            int a = static_cast<int>(parse_ll(toks[1 + j], lineno, "action"));
            if (a < 0 || a >= n) throw ParseError(lineno, "action out of range");
            vec += a * radix[j];
        }
        if (seen[vec]) throw ParseError(lineno, "duplicate action vector");
        seen[vec] = true;
        auto vals = parse_rat_list(toks[k + 2], lineno, k);
        for (int j = 0; j < k; ++j) u[j][vec] = vals[j];
    }
    for (long long vec = 0; vec < profiles; ++vec)
        if (!seen[vec])
            throw ParseError(static_cast<int>(lines.size()),
                             "utility tensor incomplete: missing action vector " + std::to_string(vec));
    try {
        return AlternatingGame(k, n, std::move(u));
    } catch (const std::invalid_argument& ex) {
        throw ParseError(1, ex.what());
    }
}

std::string emit_game(const AlternatingGame& game) {
    const int k = game.players();
    std::string out =
        "altgame k=" + std::to_string(k) + " n=" + std::to_string(game.actions()) + "\n";
    for (long long vec = 0; vec < game.profile_count(); ++vec) {
        out += "u";
        for (int a : game.decode(vec)) out += " " + std::to_string(a);
        out += " =";
        std::vector<Rat> vals;
        vals.reserve(k);
        for (int j = 1; j <= k; ++j) vals.push_back(game.utility(j, vec));
        out += " " + format_rat_list(vals) + "\n";
    }
    return out;
}

namespace {

// Vertex sequence -> edges, weights looked up in the report's edge table.
std::vector<ScheduleEdge> edges_from_vertices(const std::vector<int>& verts,
                                              const std::map<std::pair<int, int>, std::vector<Rat>>& wtab,
                                              int line) {
    std::vector<ScheduleEdge> out;
    for (size_t i = 0; i + 1 < verts.size(); ++i) {
        auto it = wtab.find({verts[i], verts[i + 1]});
        if (it == wtab.end())
            throw ParseError(line, "schedule edge " + std::to_string(verts[i]) + "->" +
                                       std::to_string(verts[i + 1]) + " has no weight entry");
        out.push_back({verts[i], verts[i + 1], it->second});
    }
    return out;
}

std::vector<int> parse_vertex_seq(const std::vector<std::string>& toks, size_t from, int line) {
    std::vector<int> verts;
    for (size_t i = from; i < toks.size(); ++i)
        verts.push_back(static_cast<int>(parse_ll(toks[i], line, "vertex id")));
    if (verts.empty()) throw ParseError(line, "empty vertex sequence");
    return verts;
}

void collect_edges(const std::vector<ScheduleEdge>& edges,
                   std::map<std::pair<int, int>, std::vector<Rat>>& wtab) {
    for (const auto& e : edges) wtab[{e.src, e.dst}] = e.w;
}

}  // namespace

EquilibriumReport parse_report(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(1, "empty report file");
    auto header = tokenize(lines[0]);
    if (header.size() != 4 || header[0] != "report")
        throw ParseError(1, "expected header 'report mode=<exact|approx> k=<k> n=<n>'");
    EquilibriumReport rep;
    std::string mode = keyed(header[1], "mode", 1);
    if (mode == "exact")
        rep.mode = EquilibriumReport::Mode::exact;
    else if (mode == "approx")
        rep.mode = EquilibriumReport::Mode::approximate;
    else
        throw ParseError(1, "unknown mode '" + mode + "'");
    rep.players = static_cast<int>(parse_ll(keyed(header[2], "k", 1), 1, "player count"));
    rep.actions = static_cast<int>(parse_ll(keyed(header[3], "n", 1), 1, "action count"));
    if (rep.players < 1 || rep.actions < 1) throw ParseError(1, "k and n must be >= 1");
    const int k = rep.players;
    long long vertex_count = k;
    for (int i = 0; i < k; ++i) {
        vertex_count *= rep.actions;
        if (vertex_count > (1LL << 26)) throw ParseError(1, "game graph too large");
    }
    rep.schedule.dims = k;

    std::map<std::pair<int, int>, std::vector<Rat>> wtab;
    struct RawCycle {
        Rat weight;
        Int mult;
        std::vector<int> verts;
        int line;
    };
    std::vector<RawCycle> raw_cycles;
    std::vector<std::pair<std::vector<int>, int>> raw_connectors;
    std::vector<int> raw_leadin;
    int leadin_line = -1;
    bool in_schedule = false, in_punishment = false;
    bool saw_nu = false, saw_util = false, saw_welfare = false, saw_eps = false, saw_delta = false;
    bool saw_target = false, saw_wbound = false;

    for (size_t li = 1; li < lines.size(); ++li) {
        const int lineno = static_cast<int>(li) + 1;
        if (lines[li].empty()) continue;
        auto toks = tokenize(lines[li]);
        const std::string& head = toks[0];
        if (head == "schedule:") {
            in_schedule = true;
            in_punishment = false;
            continue;
        }
        if (head == "punishment:") {
            in_punishment = true;
            in_schedule = false;
            continue;
        }
        if (!in_schedule && !in_punishment) {
            if (head == "eps:" && toks.size() == 2) {
                rep.eps = parse_rat_or_throw(toks[1], lineno);
                saw_eps = true;
            } else if (head == "delta:" && toks.size() == 2) {
                rep.delta = parse_rat_or_throw(toks[1], lineno);
                saw_delta = true;
            } else if (head == "nu:" && toks.size() == 2) {
                rep.nu = parse_rat_list(toks[1], lineno, k);
                saw_nu = true;
            } else if (head == "utilities:" && toks.size() == 2) {
                rep.utilities = parse_rat_list(toks[1], lineno, k);
                saw_util = true;
            } else if (head == "welfare:" && toks.size() == 2) {
                rep.welfare = parse_rat_or_throw(toks[1], lineno);
                saw_welfare = true;
            } else {
                throw ParseError(lineno, "unknown line '" + head + " ...'");
            }
        } else if (in_schedule) {
            if (head == "target:" && toks.size() == 2) {
                rep.schedule.target = parse_rat_list(toks[1], lineno, k);
                saw_target = true;
            } else if (head == "wbound:" && toks.size() == 2) {
                rep.schedule.weight_bound = parse_rat_or_throw(toks[1], lineno);
                saw_wbound = true;
            } else if (head == "leadin:") {
                if (leadin_line >= 0) throw ParseError(lineno, "duplicate leadin line");
                raw_leadin = parse_vertex_seq(toks, 1, lineno);
                leadin_line = lineno;
            } else if (head == "cycle") {
                if (toks.size() < 5 || toks[3].back() != ':')
                    throw ParseError(lineno, "expected 'cycle <j> weight=<r> mult=<m>: v0 ... v0'");
                int idx = static_cast<int>(parse_ll(toks[1], lineno, "cycle index"));
                if (idx != static_cast<int>(raw_cycles.size()))
                    throw ParseError(lineno, "cycle indices must be consecutive from 0");
                RawCycle rc;
                rc.weight = parse_rat_or_throw(keyed(toks[2], "weight", lineno), lineno);
                std::string mult = keyed(toks[3].substr(0, toks[3].size() - 1), "mult", lineno);
                rc.mult = parse_big(mult, lineno, "multiplicity");
                rc.verts = parse_vertex_seq(toks, 4, lineno);
                rc.line = lineno;
                raw_cycles.push_back(std::move(rc));
            } else if (head == "connector") {
                if (toks.size() < 3 || toks[1].back() != ':')
                    throw ParseError(lineno, "expected 'connector <j>: v0 ... vm'");
                int idx = static_cast<int>(
                    parse_ll(toks[1].substr(0, toks[1].size() - 1), lineno, "connector index"));
                if (idx != static_cast<int>(raw_connectors.size()))
                    throw ParseError(lineno, "connector indices must be consecutive from 0");
                raw_connectors.emplace_back(parse_vertex_seq(toks, 2, lineno), lineno);
            } else if (head == "edge") {
                if (toks.size() != 4) throw ParseError(lineno, "expected 'edge <src> <dst> w=<list>'");
                int src = static_cast<int>(parse_ll(toks[1], lineno, "edge source"));
                int dst = static_cast<int>(parse_ll(toks[2], lineno, "edge target"));
                if (src < 0 || src >= vertex_count || dst < 0 || dst >= vertex_count)
                    throw ParseError(lineno, "edge endpoint out of range");
                wtab[{src, dst}] = parse_rat_list(keyed(toks[3], "w", lineno), lineno, k);
            } else {
                throw ParseError(lineno, "unknown schedule line '" + head + " ...'");
            }
        } else {
            if (head != "player" || toks.size() < 2 || toks[1].back() != ':')
                throw ParseError(lineno, "expected 'player <j>: v->u ...'");
            int j = static_cast<int>(
                parse_ll(toks[1].substr(0, toks[1].size() - 1), lineno, "player index"));
            if (j != static_cast<int>(rep.punishment.size()) + 1)
                throw ParseError(lineno, "player tables must be consecutive from 1");
            if (j > k) throw ParseError(lineno, "player index out of range");
            std::vector<int> table(vertex_count, -1);
            for (size_t i = 2; i < toks.size(); ++i) {
                size_t arrow = toks[i].find("->");
                if (arrow == std::string::npos)
                    throw ParseError(lineno, "expected 'v->u', got '" + toks[i] + "'");
                int v = static_cast<int>(parse_ll(toks[i].substr(0, arrow), lineno, "vertex"));
                int u = static_cast<int>(parse_ll(toks[i].substr(arrow + 2), lineno, "vertex"));
                if (v < 0 || v >= vertex_count || u < 0 || u >= vertex_count)
                    throw ParseError(lineno, "punishment vertex out of range");
                if (table[v] != -1) throw ParseError(lineno, "duplicate punishment entry");
                table[v] = u;
            }
            rep.punishment.push_back(std::move(table));
        }
    }

    if (!saw_nu || !saw_util || !saw_welfare)
        throw ParseError(static_cast<int>(lines.size()), "missing nu/utilities/welfare section");
    if (rep.mode == EquilibriumReport::Mode::approximate && (!saw_eps || !saw_delta))
        throw ParseError(static_cast<int>(lines.size()), "approximate report without eps/delta");
    if (!saw_target || !saw_wbound || raw_cycles.empty())
        throw ParseError(static_cast<int>(lines.size()), "incomplete schedule section");
    if (raw_connectors.size() != raw_cycles.size())
        throw ParseError(static_cast<int>(lines.size()), "one connector per cycle required");
    if (static_cast<int>(rep.punishment.size()) != k)
        throw ParseError(static_cast<int>(lines.size()), "one punishment table per player required");

    for (const auto& rc : raw_cycles) {
        ScheduleCycle sc;
        sc.edges = edges_from_vertices(rc.verts, wtab, rc.line);
        if (sc.edges.empty()) throw ParseError(rc.line, "cycle needs at least one edge");
        sc.weight = rc.weight;
        sc.multiplicity = rc.mult;
        rep.schedule.cycles.push_back(std::move(sc));
    }
    for (const auto& [verts, line] : raw_connectors)
        rep.schedule.connectors.push_back(edges_from_vertices(verts, wtab, line));
    if (leadin_line >= 0)
        rep.schedule.lead_in = edges_from_vertices(raw_leadin, wtab, leadin_line);
    try {
        rep.schedule.validate();
    } catch (const std::invalid_argument& ex) {
        throw ParseError(static_cast<int>(lines.size()), ex.what());
    }
    return rep;
}

std::string emit_report(const EquilibriumReport& report) {
    std::string out = "report mode=";
    out += report.mode == EquilibriumReport::Mode::exact ? "exact" : "approx";
    out += " k=" + std::to_string(report.players) + " n=" + std::to_string(report.actions) + "\n";
    if (report.mode == EquilibriumReport::Mode::approximate) {
        out += "eps: " + format_rat(report.eps) + "\n";
        out += "delta: " + format_rat(report.delta) + "\n";
    }
    out += "nu: " + format_rat_list(report.nu) + "\n";
    out += "utilities: " + format_rat_list(report.utilities) + "\n";
    out += "welfare: " + format_rat(report.welfare) + "\n";

    out += "schedule:\n";
    out += "target: " + format_rat_list(report.schedule.target) + "\n";
    out += "wbound: " + format_rat(report.schedule.weight_bound) + "\n";
    auto vertex_seq = [](const std::vector<ScheduleEdge>& edges, int fallback) {
        std::string s;
        if (edges.empty()) return std::to_string(fallback);
        s = std::to_string(edges.front().src);
        for (const auto& e : edges) s += " " + std::to_string(e.dst);
        return s;
    };
    out += "leadin: " + vertex_seq(report.schedule.lead_in, report.schedule.start_vertex()) + "\n";
    for (size_t j = 0; j < report.schedule.cycles.size(); ++j) {
        const auto& c = report.schedule.cycles[j];
        out += "cycle " + std::to_string(j) + " weight=" + format_rat(c.weight) +
               " mult=" + c.multiplicity.str() + ": " + vertex_seq(c.edges, 0) + "\n";
    }
    for (size_t j = 0; j < report.schedule.connectors.size(); ++j)
        out += "connector " + std::to_string(j) + ": " +
               vertex_seq(report.schedule.connectors[j], report.schedule.anchor(static_cast<int>(j))) +
               "\n";

    std::map<std::pair<int, int>, std::vector<Rat>> wtab;
    collect_edges(report.schedule.lead_in, wtab);
    for (const auto& c : report.schedule.cycles) collect_edges(c.edges, wtab);
    for (const auto& c : report.schedule.connectors) collect_edges(c, wtab);
    for (const auto& [key, w] : wtab)
        out += "edge " + std::to_string(key.first) + " " + std::to_string(key.second) + " w=" +
               format_rat_list(w) + "\n";

    out += "punishment:\n";
    for (size_t j = 0; j < report.punishment.size(); ++j) {
        out += "player " + std::to_string(j + 1) + ":";
        for (size_t v = 0; v < report.punishment[j].size(); ++v)
            if (report.punishment[j][v] >= 0)
                out += " " + std::to_string(v) + "->" + std::to_string(report.punishment[j][v]);
        out += "\n";
    }
    return out;
}

}  // namespace mpg
