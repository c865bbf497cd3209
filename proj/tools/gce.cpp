// Command-line surface for the library: one subcommand per operation, plus
// the census search.  Text output by default, --json for a structured report.
// All vertex indices on this surface are 1-based.

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gce/gce.hpp"

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int max_matrix_size() {
    int limit = gce::ZeroOneMatrix::kMaxN;
    if (const char* env = std::getenv("GCE_MAX_N")) {
        try {
            const int v = std::stoi(env);
            if (v < 1)
                limit = 1;
            else if (v < limit)
                limit = v;
        } catch (const std::exception&) {
            // Unparsable override is ignored; the built-in limit stays.
        }
    }
    return limit;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool looks_like_file(const std::string& spec) {
    std::error_code ec;
    return std::filesystem::is_regular_file(spec, ec);
}

gce::ZeroOneMatrix load_01(const std::string& spec) {
    if (looks_like_file(spec)) return gce::parse_matrix(read_file(spec), max_matrix_size());
    std::string text = spec;
    for (char& c : text)
        if (c == '/') c = '\n';
    try {
        return gce::parse_matrix(text, max_matrix_size());
    } catch (const std::exception& e) {
        throw std::runtime_error("cannot read '" + spec + "': not a file, and not an inline matrix (" + e.what() + ")");
    }
}

gce::IntMatrix load_int(const std::string& spec) {
    if (looks_like_file(spec)) return gce::parse_int_matrix(read_file(spec));
    try {
        return gce::parse_int_matrix(spec);
    } catch (const std::exception& e) {
        throw std::runtime_error("cannot read '" + spec + "': not a file, and not an inline matrix (" + e.what() + ")");
    }
}

// "1,3,4" or "{1,3,4}" (1-based vertices) -> bitmask.
std::uint16_t parse_vertex_set(const std::string& text) {
    std::uint16_t mask = 0;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        const int v = std::stoi(cur);
        if (v < 1 || v > gce::ZeroOneMatrix::kMaxN) throw std::runtime_error("vertex " + cur + " out of range");
        mask = static_cast<std::uint16_t>(mask | (1u << (v - 1)));
        cur.clear();
    };
    for (char c : text) {
        if (c == '{' || c == '}' || c == ' ' || c == '\t') continue;
        if (c == ',') {
            flush();
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) throw std::runtime_error(std::string("invalid vertex list character '") + c + "'");
        cur += c;
    }
    flush();
    return mask;
}

std::string mask_to_text(std::uint16_t mask) {
    std::string out = "{";
    bool first = true;
    for (int j = 0; j < gce::ZeroOneMatrix::kMaxN; ++j)
        if (mask >> j & 1u) {
            if (!first) out += ',';
            out += std::to_string(j + 1);
            first = false;
        }
    return out + "}";
}

json mask_to_json(std::uint16_t mask) {
    json arr = json::array();
    for (int j = 0; j < gce::ZeroOneMatrix::kMaxN; ++j)
        if (mask >> j & 1u) arr.push_back(j + 1);
    return arr;
}

json matrix_to_json(const gce::ZeroOneMatrix& B) {
    json arr = json::array();
    for (const std::string& row : gce::row_strings(B)) arr.push_back(row);
    return arr;
}

json int_matrix_to_json(const gce::IntMatrix& M) {
    json arr = json::array();
    for (int i = 0; i < M.rows; ++i) {
        std::string row;
        for (int j = 0; j < M.cols; ++j) {
            if (j) row += ' ';
            row += std::to_string(M.at(i, j));
        }
        arr.push_back(row);
    }
    return arr;
}

json sigma_to_json(const gce::Permutation& sigma) {
    json arr = json::array();
    for (int img : sigma.images) arr.push_back(img + 1);
    return arr;
}

std::string sigma_to_text(const gce::Permutation& sigma) {
    std::string out = "(";
    for (std::size_t i = 0; i < sigma.images.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(sigma.images[i] + 1);
    }
    return out + ")";
}

std::string move_to_text(const gce::TransferMove& mv) {
    return "p=" + std::to_string(mv.p + 1) + " K=" + mask_to_text(mv.K) + " M=" + mask_to_text(mv.M);
}

json move_to_json(const gce::TransferMove& mv) {
    return json{{"p", mv.p + 1}, {"K", mask_to_json(mv.K)}, {"M", mask_to_json(mv.M)}};
}

json k0_to_json(const gce::K0Invariant& inv) {
    json j{{"group", gce::k0_group_string(inv)},
           {"torsion_factors", inv.torsion_factors},
           {"free_rank", inv.free_rank},
           {"identity_residues", inv.identity_residues},
           {"identity_free_coords", inv.identity_free_coords}};
    if (inv.identity_order)
        j["identity_order"] = *inv.identity_order;
    else
        j["identity_order"] = nullptr;
    return j;
}

std::string k0_to_text(const gce::K0Invariant& inv) {
    std::string line = gce::k0_group_string(inv) + ", identity order ";
    line += inv.identity_order ? std::to_string(*inv.identity_order) : "infinite";
    return line;
}

void print_matrix(const gce::ZeroOneMatrix& B) { std::cout << gce::serialize_matrix(B); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toolkit for finite directed graphs given as 0-1 vertex matrices: transfer moves and their equivalence classes, vertex and complete explosions, shift-equivalence factorizations, K0 invariants, and a small-size census search."};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit a JSON document instead of text");

    std::vector<std::string> specs;
    std::vector<std::string> inline_specs;
    int vertex = 0;
    int p_vertex = 0;
    std::string k_set, m_set, m1_set, m2_set;
    bool include_trivial = false;
    bool use_perms = true;
    std::uint64_t max_size = 1'000'000;
    std::string dump_path;
    bool show_steps = false;
    std::string r_spec, s_spec;
    int search_n = 3;
    bool include_reducible = false;
    int threads = 1;

    auto add_matrix_args = [&](CLI::App* sub, int count) {
        sub->add_option("matrix", specs, count == 1 ? "matrix file (.01m) or inline rows like 110/011/101" : "matrix files (.01m) or inline rows like 110/011/101");
        sub->add_option("--inline", inline_specs, "matrix given inline, rows separated by '/'");
        sub->fallthrough();
    };

    CLI::App* sc_canon = app.add_subcommand("canon", "canonical form under vertex relabeling (and the relabeling that achieves it)");
    add_matrix_args(sc_canon, 1);
    CLI::App* sc_transpose = app.add_subcommand("transpose", "transpose (reverse graph)");
    add_matrix_args(sc_transpose, 1);
    CLI::App* sc_irr = app.add_subcommand("irreducible", "is the graph strongly connected with at least one edge?");
    add_matrix_args(sc_irr, 1);
    CLI::App* sc_cofinal = app.add_subcommand("cofinal", "cofinal vertices (reach every cyclic component)");
    add_matrix_args(sc_cofinal, 1);
    sc_cofinal->add_option("--vertex", vertex, "check a single 1-based vertex");
    CLI::App* sc_transfers = app.add_subcommand("transfers", "list the legal transfer moves");
    add_matrix_args(sc_transfers, 1);
    sc_transfers->add_flag("--include-trivial", include_trivial, "include the no-op decomposition of each row");
    CLI::App* sc_apply = app.add_subcommand("apply-transfer", "apply one transfer move");
    add_matrix_args(sc_apply, 1);
    sc_apply->add_option("--p", p_vertex, "1-based row to rewrite")->required();
    sc_apply->add_option("--K", k_set, "kept vertices, e.g. 1,3 (may be empty)");
    sc_apply->add_option("--M", m_set, "merged rows, e.g. 2,4 (may be empty)");
    CLI::App* sc_class = app.add_subcommand("class", "enumerate the primitive-equivalence class");
    add_matrix_args(sc_class, 1);
    sc_class->add_flag("--perms,!--no-perms", use_perms, "close under vertex relabeling too (default on)");
    sc_class->add_option("--max", max_size, "stop after this many matrices (default 1000000)");
    sc_class->add_option("--dump", dump_path, "write every member to this file, one per line");
    CLI::App* sc_equiv = app.add_subcommand("equiv", "decide primitive equivalence of two matrices");
    add_matrix_args(sc_equiv, 2);
    sc_equiv->add_flag("--perms,!--no-perms", use_perms, "allow vertex relabeling moves (default on)");
    sc_equiv->add_option("--max", max_size, "search cap (default 1000000)");
    sc_equiv->add_flag("--show-steps", show_steps, "print each intermediate matrix of the witness path");
    CLI::App* sc_rtrans = app.add_subcommand("reverse-transfers", "list legal reverse transfer moves (cofinal vertices only)");
    add_matrix_args(sc_rtrans, 1);
    sc_rtrans->add_flag("--include-trivial", include_trivial, "include no-op decompositions");
    CLI::App* sc_explode = app.add_subcommand("explode", "vertex explosion at a split of the out-edges");
    add_matrix_args(sc_explode, 1);
    sc_explode->add_option("--vertex", vertex, "1-based vertex to split")->required();
    sc_explode->add_option("--m1", m1_set, "targets of the first piece, e.g. 1,3 (list the vertex itself for its loop)")->required();
    sc_explode->add_option("--m2", m2_set, "targets of the second piece (default: the remaining out-edges)");
    CLI::App* sc_cexplode = app.add_subcommand("complete-explode", "iterated edge explosion splitting a vertex into out-degree-many pieces");
    add_matrix_args(sc_cexplode, 1);
    sc_cexplode->add_option("--vertex", vertex, "1-based vertex")->required();
    CLI::App* sc_rexplode = app.add_subcommand("reverse-explode", "explosion of the reverse graph at a cofinal vertex");
    add_matrix_args(sc_rexplode, 1);
    sc_rexplode->add_option("--vertex", vertex, "1-based vertex to split")->required();
    sc_rexplode->add_option("--m1", m1_set, "sources of the first piece's in-edges")->required();
    sc_rexplode->add_option("--m2", m2_set, "sources of the second piece's in-edges (default: the rest)");
    CLI::App* sc_isexp = app.add_subcommand("is-explosion", "is the second matrix an explosion of the first, up to relabeling?");
    add_matrix_args(sc_isexp, 2);
    CLI::App* sc_edge = app.add_subcommand("edge-matrix", "matrix indexed by edges; (e,f)=1 iff e ends where f starts");
    add_matrix_args(sc_edge, 1);
    CLI::App* sc_everify = app.add_subcommand("esse-verify", "check R*S and S*R against the two matrices");
    add_matrix_args(sc_everify, 2);
    sc_everify->add_option("--R", r_spec, "left factor (file or inline; integer entries)")->required();
    sc_everify->add_option("--S", s_spec, "right factor (file or inline; integer entries)")->required();
    CLI::App* sc_edecide = app.add_subcommand("esse-decide", "find a column-subdivision factorization linking sizes n and n+1");
    add_matrix_args(sc_edecide, 2);
    CLI::App* sc_imprim = app.add_subcommand("imprimitivity", "bipartite graph with block matrix [[0,R],[S,0]]");
    sc_imprim->add_option("--R", r_spec, "upper-right 0-1 block (file or inline)")->required();
    sc_imprim->add_option("--S", s_spec, "lower-left 0-1 block (file or inline)")->required();
    sc_imprim->fallthrough();
    CLI::App* sc_k0 = app.add_subcommand("k0", "K0 group of the graph algebra with the class of the identity");
    add_matrix_args(sc_k0, 1);
    CLI::App* sc_k0pairs = app.add_subcommand("k0-pairs", "are the two (K0, identity) pairs isomorphic?");
    add_matrix_args(sc_k0pairs, 2);
    CLI::App* sc_search = app.add_subcommand("search", "census of size-n matrices: classes, K0 buckets, and invariant-blind inequivalent pairs");
    sc_search->add_option("--n", search_n, "matrix size, 1..4")->required();
    sc_search->add_flag("--include-reducible", include_reducible, "census all matrices, not just irreducible non-permutation ones");
    sc_search->add_option("--max", max_size, "per-class search cap (default 1000000)");
    sc_search->add_option("--threads", threads, "worker threads for the enumeration pass");
    sc_search->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    json doc;
    json inputs = json::array();
    std::uint64_t visited = 0;
    std::string command;

    try {
        std::vector<std::string> all_specs = specs;
        all_specs.insert(all_specs.end(), inline_specs.begin(), inline_specs.end());
        auto need = [&](std::size_t k) {
            if (all_specs.size() != k)
                throw UsageError("expected " + std::to_string(k) + " matrix input" + (k == 1 ? "" : "s") + ", got " + std::to_string(all_specs.size()));
            std::vector<gce::ZeroOneMatrix> mats;
            mats.reserve(k);
            for (const std::string& s : all_specs) {
                mats.push_back(load_01(s));
                inputs.push_back(matrix_to_json(mats.back()));
            }
            return mats;
        };

        if (sc_canon->parsed()) {
            command = "canon";
            const auto mats = need(1);
            const gce::CanonicalResult canon = gce::canonical_form(mats[0]);
            if (!as_json) {
                print_matrix(canon.matrix);
            }
            doc["result"] = {{"canonical", matrix_to_json(canon.matrix)}, {"sigma", sigma_to_json(canon.sigma)}};
        } else if (sc_transpose->parsed()) {
            command = "transpose";
            const auto mats = need(1);
            const gce::ZeroOneMatrix T = gce::transpose(mats[0]);
            if (!as_json) print_matrix(T);
            doc["result"] = {{"matrix", matrix_to_json(T)}};
        } else if (sc_irr->parsed()) {
            command = "irreducible";
            const auto mats = need(1);
            const bool irr = gce::is_irreducible(mats[0]);
            if (!as_json) std::cout << (irr ? "true" : "false") << "\n";
            doc["result"] = {{"irreducible", irr}};
        } else if (sc_cofinal->parsed()) {
            command = "cofinal";
            const auto mats = need(1);
            if (sc_cofinal->count("--vertex")) {
                const bool cof = gce::is_cofinal(mats[0], vertex - 1);
                if (!as_json) std::cout << (cof ? "true" : "false") << "\n";
                doc["result"] = {{"vertex", vertex}, {"cofinal", cof}};
            } else {
                json arr = json::array();
                std::string line;
                for (int v = 0; v < mats[0].n; ++v)
                    if (gce::is_cofinal(mats[0], v)) {
                        arr.push_back(v + 1);
                        if (!line.empty()) line += ' ';
                        line += std::to_string(v + 1);
                    }
                if (!as_json) std::cout << (line.empty() ? "none" : line) << "\n";
                doc["result"] = {{"cofinal_vertices", arr}};
            }
        } else if (sc_transfers->parsed()) {
            command = "transfers";
            const auto mats = need(1);
            const auto moves = gce::transfer_moves(mats[0], include_trivial);
            json arr = json::array();
            for (const auto& mv : moves) {
                if (!as_json) std::cout << move_to_text(mv) << "\n";
                arr.push_back(move_to_json(mv));
            }
            doc["result"] = {{"moves", arr}};
        } else if (sc_apply->parsed()) {
            command = "apply-transfer";
            const auto mats = need(1);
            gce::TransferMove mv{p_vertex - 1, parse_vertex_set(k_set), parse_vertex_set(m_set)};
            const gce::ZeroOneMatrix C = gce::apply_transfer(mats[0], mv);
            if (!as_json) print_matrix(C);
            doc["result"] = {{"matrix", matrix_to_json(C)}, {"move", move_to_json(mv)}};
        } else if (sc_class->parsed()) {
            command = "class";
            const auto mats = need(1);
            gce::ClassOptions opts;
            opts.use_permutations = use_perms;
            opts.max_size = max_size;
            opts.collect_members = !dump_path.empty();
            const gce::ClassReport rep = gce::equivalence_class(mats[0], opts);
            visited = rep.size;
            if (!dump_path.empty()) {
                std::ofstream out(dump_path);
                if (!out) throw std::runtime_error("cannot write '" + dump_path + "'");
                for (const auto& m : rep.representatives) {
                    const auto rows = gce::row_strings(m);
                    for (std::size_t i = 0; i < rows.size(); ++i) out << rows[i] << (i + 1 < rows.size() ? "/" : "\n");
                }
            }
            if (!as_json) {
                std::cout << "size: " << rep.size << "\n"
                          << "exhausted: " << (rep.exhausted ? "true" : "false") << "\n"
                          << "moves: forward=" << rep.moves_used.forward << " inverse=" << rep.moves_used.inverse
                          << " permutation=" << rep.moves_used.permutation << "\n";
            }
            doc["result"] = {{"size", rep.size},
                             {"exhausted", rep.exhausted},
                             {"moves", {{"forward", rep.moves_used.forward}, {"inverse", rep.moves_used.inverse}, {"permutation", rep.moves_used.permutation}}}};
        } else if (sc_equiv->parsed()) {
            command = "equiv";
            const auto mats = need(2);
            const gce::EquivalenceResult res = gce::are_primitively_equivalent(mats[0], mats[1], max_size, use_perms);
            visited = res.visited;
            json steps = json::array();
            for (const auto& step : res.witness) {
                json js;
                switch (step.kind) {
                    case gce::StepKind::Forward:
                        js = {{"kind", "forward"}, {"move", move_to_json(step.mv)}};
                        break;
                    case gce::StepKind::Inverse:
                        js = {{"kind", "inverse"}, {"move", move_to_json(step.mv)}};
                        break;
                    case gce::StepKind::Permutation:
                        js = {{"kind", "permutation"}, {"sigma", sigma_to_json(step.sigma)}};
                        break;
                }
                js["result"] = matrix_to_json(step.result);
                steps.push_back(js);
            }
            if (!as_json) {
                std::cout << "equivalent: " << gce::to_string(res.equivalent) << "\n";
                for (const auto& step : res.witness) {
                    switch (step.kind) {
                        case gce::StepKind::Forward: std::cout << "forward " << move_to_text(step.mv) << "\n"; break;
                        case gce::StepKind::Inverse: std::cout << "inverse " << move_to_text(step.mv) << "\n"; break;
                        case gce::StepKind::Permutation: std::cout << "permute sigma=" << sigma_to_text(step.sigma) << "\n"; break;
                    }
                    if (show_steps) print_matrix(step.result);
                }
            }
            doc["result"] = {{"equivalent", gce::to_string(res.equivalent)}, {"witness", steps}};
        } else if (sc_rtrans->parsed()) {
            command = "reverse-transfers";
            const auto mats = need(1);
            const auto moves = gce::reverse_transfer_moves(mats[0], include_trivial);
            json arr = json::array();
            for (const auto& mv : moves) {
                if (!as_json) std::cout << move_to_text(mv) << "\n";
                arr.push_back(move_to_json(mv));
            }
            doc["result"] = {{"moves", arr}};
        } else if (sc_explode->parsed() || sc_rexplode->parsed()) {
            const bool rev = sc_rexplode->parsed();
            command = rev ? "reverse-explode" : "explode";
            const auto mats = need(1);
            const gce::ZeroOneMatrix base = rev ? gce::transpose(mats[0]) : mats[0];
            const int v = vertex - 1;
            base.require_vertex(v);
            std::uint16_t M1 = parse_vertex_set(m1_set);
            std::uint16_t M2 = sc_explode->count("--m2") || sc_rexplode->count("--m2")
                                   ? parse_vertex_set(m2_set)
                                   : static_cast<std::uint16_t>(base.rows[static_cast<std::size_t>(v)] & ~M1);
            const gce::VertexSplit split{v, M1, M2};
            const gce::ZeroOneMatrix C = rev ? gce::reverse_explosion(mats[0], split) : gce::vertex_explosion(mats[0], split);
            if (!as_json) print_matrix(C);
            doc["result"] = {{"matrix", matrix_to_json(C)},
                             {"split", {{"v", vertex}, {"M1", mask_to_json(M1)}, {"M2", mask_to_json(M2)}}}};
        } else if (sc_cexplode->parsed()) {
            command = "complete-explode";
            const auto mats = need(1);
            const gce::ZeroOneMatrix C = gce::complete_explosion(mats[0], vertex - 1);
            if (!as_json) print_matrix(C);
            doc["result"] = {{"matrix", matrix_to_json(C)}};
        } else if (sc_isexp->parsed()) {
            command = "is-explosion";
            const auto mats = need(2);
            const auto witness = gce::is_explosion_of(mats[0], mats[1]);
            if (witness) {
                if (!as_json) {
                    std::cout << "explosion: true\n"
                              << "v=" << witness->split.v + 1 << " M1=" << mask_to_text(witness->split.M1)
                              << " M2=" << mask_to_text(witness->split.M2) << "\n"
                              << "sigma=" << sigma_to_text(witness->sigma) << "\n";
                }
                doc["result"] = {{"explosion", true},
                                 {"split", {{"v", witness->split.v + 1}, {"M1", mask_to_json(witness->split.M1)}, {"M2", mask_to_json(witness->split.M2)}}},
                                 {"sigma", sigma_to_json(witness->sigma)}};
            } else {
                if (!as_json) std::cout << "explosion: false\n";
                doc["result"] = {{"explosion", false}};
            }
        } else if (sc_edge->parsed()) {
            command = "edge-matrix";
            const auto mats = need(1);
            const gce::ZeroOneMatrix A = gce::edge_matrix(mats[0]);
            json edges = json::array();
            for (int i = 0; i < mats[0].n; ++i)
                for (int j = 0; j < mats[0].n; ++j)
                    if (mats[0].get(i, j)) edges.push_back(json::array({i + 1, j + 1}));
            if (!as_json) print_matrix(A);
            doc["result"] = {{"matrix", matrix_to_json(A)}, {"edges", edges}};
        } else if (sc_everify->parsed()) {
            command = "esse-verify";
            const auto mats = need(2);
            gce::FactorPair pair{load_int(r_spec), load_int(s_spec)};
            inputs.push_back(int_matrix_to_json(pair.R));
            inputs.push_back(int_matrix_to_json(pair.S));
            const bool ok = gce::verify_esse(mats[0], mats[1], pair);
            const bool cs = gce::is_column_subdivision(pair.R);
            if (!as_json) std::cout << "esse: " << (ok ? "true" : "false") << "\ncolumn_subdivision: " << (cs ? "true" : "false") << "\n";
            doc["result"] = {{"esse", ok}, {"column_subdivision", cs}};
        } else if (sc_edecide->parsed()) {
            command = "esse-decide";
            const auto mats = need(2);
            const auto pair = gce::esse_cs_decide(mats[0], mats[1]);
            if (pair) {
                if (!as_json) {
                    std::cout << "esse-cs: true\nR:\n"
                              << gce::serialize_int_matrix(pair->R) << "S:\n"
                              << gce::serialize_int_matrix(pair->S);
                }
                doc["result"] = {{"decided", true}, {"R", int_matrix_to_json(pair->R)}, {"S", int_matrix_to_json(pair->S)}};
            } else {
                if (!as_json) std::cout << "esse-cs: false\n";
                doc["result"] = {{"decided", false}};
            }
        } else if (sc_imprim->parsed()) {
            command = "imprimitivity";
            gce::FactorPair pair{load_int(r_spec), load_int(s_spec)};
            inputs.push_back(int_matrix_to_json(pair.R));
            inputs.push_back(int_matrix_to_json(pair.S));
            const gce::ZeroOneMatrix X = gce::imprimitivity_graph(pair);
            if (!as_json) print_matrix(X);
            doc["result"] = {{"matrix", matrix_to_json(X)}};
        } else if (sc_k0->parsed()) {
            command = "k0";
            const auto mats = need(1);
            const gce::K0Invariant inv = gce::k0_invariant(mats[0]);
            if (!as_json) std::cout << k0_to_text(inv) << "\n";
            doc["result"] = k0_to_json(inv);
        } else if (sc_k0pairs->parsed()) {
            command = "k0-pairs";
            const auto mats = need(2);
            const gce::K0Invariant a = gce::k0_invariant(mats[0]);
            const gce::K0Invariant b = gce::k0_invariant(mats[1]);
            const gce::Ternary iso = gce::k0_pairs_isomorphic(a, b);
            if (!as_json) {
                std::cout << "first: " << k0_to_text(a) << "\nsecond: " << k0_to_text(b) << "\nisomorphic: " << gce::to_string(iso) << "\n";
            }
            doc["result"] = {{"first", k0_to_json(a)}, {"second", k0_to_json(b)}, {"isomorphic", gce::to_string(iso)}};
        } else if (sc_search->parsed()) {
            command = "search";
            gce::SearchOptions opts;
            opts.irreducible_only = !include_reducible;
            opts.class_cap = max_size;
            opts.threads = threads;
            const gce::SearchReport rep = gce::run_search(search_n, opts);
            visited = rep.bfs_visited;
            json classes = json::array();
            for (const auto& cls : rep.classes)
                classes.push_back({{"rep", matrix_to_json(cls.rep)},
                                   {"size", cls.size},
                                   {"exhausted", cls.exhausted},
                                   {"k0", k0_to_json(cls.invariant)}});
            json buckets = json::array();
            for (const auto& bucket : rep.buckets) buckets.push_back({{"key", bucket.key}, {"classes", bucket.class_ids}});
            json pairs = json::array();
            for (const auto& [a, b] : rep.counterexample_pairs) pairs.push_back(json::array({a, b}));
            doc["result"] = {{"n", rep.n},
                             {"irreducible_only", rep.irreducible_only},
                             {"enumerated", rep.enumerated},
                             {"filtered", rep.filtered},
                             {"seeds", rep.seeds},
                             {"classes", classes},
                             {"buckets", buckets},
                             {"counterexamples", pairs},
                             {"complete", rep.complete}};
            if (!as_json) {
                std::cout << "n: " << rep.n << "\n"
                          << "filter: " << (rep.irreducible_only ? "irreducible, non-permutation" : "all matrices") << "\n"
                          << "enumerated: " << rep.enumerated << "\n"
                          << "filtered: " << rep.filtered << "\n"
                          << "canonical classes: " << rep.classes.size() << "\n"
                          << "bfs visited: " << rep.bfs_visited << "\n"
                          << "complete: " << (rep.complete ? "true" : "false") << "\n"
                          << "counterexample pairs: " << rep.counterexample_pairs.size() << "\n";
                for (const auto& [a, b] : rep.counterexample_pairs) {
                    const auto& ca = rep.classes[static_cast<std::size_t>(a)];
                    const auto& cb = rep.classes[static_cast<std::size_t>(b)];
                    std::cout << "pair (" << gce::detail::coarse_k0_key(ca.invariant) << "):\n";
                    const auto rows_a = gce::row_strings(ca.rep);
                    const auto rows_b = gce::row_strings(cb.rep);
                    std::cout << "  ";
                    for (std::size_t i = 0; i < rows_a.size(); ++i) std::cout << rows_a[i] << (i + 1 < rows_a.size() ? "/" : "\n");
                    std::cout << "  ";
                    for (std::size_t i = 0; i < rows_b.size(); ++i) std::cout << rows_b[i] << (i + 1 < rows_b.size() ? "/" : "\n");
                }
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (as_json) {
        const auto t1 = std::chrono::steady_clock::now();
        doc["command"] = command;
        doc["inputs"] = inputs;
        doc["stats"] = {{"elapsed_ms", std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()},
                        {"visited", visited}};
        std::cout << doc.dump(2) << "\n";
    }
    return 0;
}
