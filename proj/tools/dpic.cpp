#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <type_traits>

#include "dpic/verify.hpp"

using namespace dpic;

namespace {

// exit 2
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    int m = 5;
    bool m_given = false;
    std::uint64_t seed = 1;
    std::string field;
    int verbosity = 0;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError(path + ": cannot open");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

bool names_star(const std::string& a) { return a == "gamma" || a == "lambda" || a == "Λ"; }

ModifiedBrauerTree load_tree(const std::string& arg, int m) {
    if (names_star(arg)) return gamma_tree(m);
    if (arg == "line" || arg == "R") return line_tree(m);
    ModifiedBrauerTree t;
    try {
        t = tree_from_text(read_file(arg));
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(arg + ": " + e.what());
    }
    auto issues = validate_tree(t);
    if (!issues.empty()) throw UsageError(arg + ": " + issues.front());
    return t;
}

template <class F>
PathAlgebra<F> load_algebra(const std::string& arg, int m) {
    if (names_star(arg)) return lambda_algebra<F>(m);
    if (arg == "line" || arg == "R") return r_algebra<F>(m);
    return compute_basis(build_presentation<F>(load_tree(arg, m)));
}

template <class F>
ProjComplex<F> load_complex(const PathAlgebra<F>& A, const std::string& path) {
    try {
        return complex_from_text(A, read_file(path));
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

MutationWord parse_mutation_word(const std::string& s, int m) {
    MutationWord w;
    try {
        w = MutationWord::parse(s);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    for (const auto& st : w.steps)
        if (st.label > m) throw UsageError("label " + std::to_string(st.label) + " exceeds m = " + std::to_string(m));
    return w;
}

GWord parse_gword(const std::string& s, int m) {
    GWord w;
    try {
        w = GWord::parse(s);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    if (w.max_index() > m) throw UsageError("sigma index exceeds m = " + std::to_string(m));
    return w;
}

template <class Fn>
int with_field(const std::string& spec, Fn&& fn) {
    if (spec == "rational") return fn(std::type_identity<Rational>{});
    if (spec.rfind("gfp:", 0) == 0) {
        try {
            std::size_t used = 0;
            auto p = std::stoull(spec.substr(4), &used);
            if (used != spec.size() - 4) throw std::invalid_argument("trailing characters");
            ModP::set_modulus(p);
        } catch (const std::exception& e) {
            throw UsageError("--field " + spec + ": " + e.what());
        }
        return fn(std::type_identity<ModP>{});
    }
    throw UsageError("--field must be rational or gfp:<p>, got " + spec);
}

std::string perm_line(const LabelPermutation& p) {
    std::string s;
    for (int i = 1; i <= p.size(); ++i) s += (i > 1 ? " " : "") + std::to_string(p(i));
    return s;
}

template <class F>
void print_summands(const PathAlgebra<F>& A, const TiltingComplex<F>& T, int verbosity) {
    for (int l = 1; l <= T.m(); ++l) {
        std::cout << "summand " << l << ":\n" << complex_to_text(A, T.summand(l));
        if (verbosity > 0) std::cout << complex_describe(A, T.summand(l));
    }
}

void print_report(const verify::Report& r) {
    std::cout << "criterion " << r.criterion << " " << r.name << "\n";
    for (const auto& l : r.lines) std::cout << l << "\n";
    for (const auto& f : r.findings) std::cout << f.line() << "\n";
    std::cout << "RESULT " << (r.pass() ? "PASS" : "FAIL") << " " << r.name << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Modified Brauer trees: mutations, twists, normal forms"};
    app.fallthrough();
    app.require_subcommand(1);
    Config cfg;
    if (const char* env = std::getenv("DPIC_FIELD")) cfg.field = env;
    else cfg.field = "rational";
    auto* mopt = app.add_option("--m", cfg.m, "number of labels, at least 4")->check(CLI::Range(4, 64));
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--field", cfg.field, "rational or gfp:<p> (default from DPIC_FIELD)");
    app.add_flag("-v,--verbose", cfg.verbosity, "more detail");

    // tree
    auto* tree = app.add_subcommand("tree", "tree I/O and moves");
    tree->require_subcommand(1);
    std::string tree_arg, word_arg, second_arg;
    int label = 0;
    auto* tree_show = tree->add_subcommand("show", "print a tree and its diagnostics");
    tree_show->add_option("tree", tree_arg, "tree file, gamma or line")->required();
    auto* tree_validate = tree->add_subcommand("validate", "check the tree invariants");
    tree_validate->add_option("tree", tree_arg)->required();
    auto* tree_follow = tree->add_subcommand("followers", "edges following a label");
    tree_follow->add_option("tree", tree_arg)->required();
    tree_follow->add_option("label", label)->required();
    auto* tree_mutate = tree->add_subcommand("mutate", "apply a mutation word to a tree");
    tree_mutate->add_option("tree", tree_arg)->required();
    tree_mutate->add_option("word", word_arg)->required();
    auto* tree_std = tree->add_subcommand("standardize", "relabel into a standard labeling");
    tree_std->add_option("tree", tree_arg)->required();
    auto* tree_shapes = tree->add_subcommand("shapes", "list all tree shapes reachable from the star");

    // algebra
    auto* alg = app.add_subcommand("algebra", "basis and Cartan matrix of a tree algebra");
    alg->require_subcommand(1);
    auto* alg_basis = alg->add_subcommand("basis", "dimension, Cartan matrix and Hom bases");
    alg_basis->add_option("tree", tree_arg, "tree file, lambda or R")->required();
    auto* alg_cartan = alg->add_subcommand("cartan", "Cartan matrix only");
    alg_cartan->add_option("tree", tree_arg)->required();

    // complex
    auto* cx = app.add_subcommand("complex", "complexes of projectives");
    cx->require_subcommand(1);
    std::string xfile, yfile;
    int hom_shift = 0;
    auto* cx_hom = cx->add_subcommand("hom", "dim Hom_K(X, Y[n])");
    cx_hom->add_option("algebra", tree_arg)->required();
    cx_hom->add_option("X", xfile)->required();
    cx_hom->add_option("Y", yfile)->required();
    cx_hom->add_option("--shift", hom_shift);
    auto* cx_reduce = cx->add_subcommand("reduce", "remove split summands");
    cx_reduce->add_option("algebra", tree_arg)->required();
    cx_reduce->add_option("X", xfile)->required();
    auto* cx_iso = cx->add_subcommand("iso", "isomorphism test in the homotopy category");
    cx_iso->add_option("algebra", tree_arg)->required();
    cx_iso->add_option("X", xfile)->required();
    cx_iso->add_option("Y", yfile)->required();

    // mutate
    auto* mut = app.add_subcommand("mutate", "tilting mutation");
    mut->require_subcommand(1);
    auto* mut_run = mut->add_subcommand("run", "replay a mutation word on the regular module");
    mut_run->add_option("tree", tree_arg, "tree file or lambda")->required();
    mut_run->add_option("word", word_arg)->required();
    std::string dir_arg = "+";
    auto* mut_val = mut->add_subcommand("validate", "cross-validate the tree rule against categorical mutation");
    mut_val->add_option("tree", tree_arg)->required();
    mut_val->add_option("label", label)->required();
    mut_val->add_option("--dir", dir_arg, "+ or -")->check(CLI::IsMember({"+", "-"}));

    // standard-seq
    bool with_complex = false;
    auto* stdseq = app.add_subcommand("standard-seq", "standard mutation sequence of a standardly labeled tree");
    stdseq->add_option("tree", tree_arg)->required();
    stdseq->add_flag("--complex", with_complex, "also print the closed-form summands");

    // twist
    auto* tw = app.add_subcommand("twist", "words in the twist group");
    tw->require_subcommand(1);
    auto* tw_eval = tw->add_subcommand("eval", "evaluate a word on Lambda");
    tw_eval->add_option("word", word_arg, "e.g. \"s1 s2^-1 t k(-1) sh(-2)\"")->required();
    bool inverse = false;
    auto* tw_recipe = tw->add_subcommand("recipe", "mutation word realizing t_i");
    tw_recipe->add_option("i", label)->required();
    tw_recipe->add_flag("--inverse", inverse);

    // decompose
    auto* dec = app.add_subcommand("decompose", "write a mutation word returning to Lambda as a twist word");
    dec->add_option("word", word_arg)->required();

    // group
    auto* grp = app.add_subcommand("group", "normal forms and the word problem");
    grp->require_subcommand(1);
    auto* grp_nf = grp->add_subcommand("nf", "normal form in G_m");
    grp_nf->add_option("word", word_arg)->required();
    auto* grp_eq = grp->add_subcommand("eq", "equality in G_m");
    grp_eq->add_option("w1", word_arg)->required();
    grp_eq->add_option("w2", second_arg)->required();
    auto* grp_braid = grp->add_subcommand("braid-nf", "greedy normal form in the Artin group");
    grp_braid->add_option("word", word_arg)->required();

    // verify
    std::string item;
    int samples = 0;
    auto* ver = app.add_subcommand("verify", "run an acceptance suite");
    ver->add_option("item", item,
                    "algebra | rules | standard | lemma2 | lemma3 | lemma4 | lemma5 | braid | appendix[:<case>] | "
                    "decompose | garside | gm | all")
        ->required();
    ver->add_option("--samples", samples, "override the number of random samples");

    // export-dot
    auto* dot = app.add_subcommand("export-dot", "Graphviz rendering of a tree");
    dot->add_option("tree", tree_arg)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    cfg.m_given = mopt->count() > 0;
    const int m = cfg.m;

    try {
        return with_field(cfg.field, [&](auto tag) -> int {
            using F = typename decltype(tag)::type;

            if (tree_show->parsed() || tree_validate->parsed()) {
                auto t = tree_show->parsed() ? load_tree(tree_arg, m) : [&] {
                    if (names_star(tree_arg) || tree_arg == "line" || tree_arg == "R") return load_tree(tree_arg, m);
                    try {
                        return tree_from_text(read_file(tree_arg));
                    } catch (const UsageError&) {
                        throw;
                    } catch (const std::exception& e) {
                        throw UsageError(tree_arg + ": " + e.what());
                    }
                }();
                auto issues = validate_tree(t);
                if (tree_show->parsed()) {
                    std::cout << "kind: " << kind_name(t.kind) << "\nm: " << t.m << "\n" << tree_to_text(t);
                    if (t.kind != TreeKind::Plain) std::cout << "standard: " << (is_standard(t) ? "yes" : "no") << "\n";
                    return 0;
                }
                for (const auto& s : issues) std::cout << "FINDING\ttrees\t" << tree_arg << "\tvalid tree\t" << s << "\n";
                std::cout << (issues.empty() ? "valid\n" : "invalid\n");
                return issues.empty() ? 0 : 1;
            }
            if (tree_follow->parsed()) {
                auto t = load_tree(tree_arg, m);
                if (label < 1 || label > t.m) throw UsageError("label out of range");
                for (int l : following_edges(t, label)) std::cout << edge_token(t, t.edge_of(l)) << "\n";
                return 0;
            }
            if (tree_mutate->parsed()) {
                auto t = load_tree(tree_arg, m);
                std::cout << tree_to_text(apply_word(t, parse_mutation_word(word_arg, t.m)));
                return 0;
            }
            if (tree_std->parsed()) {
                std::cout << tree_to_text(standardize(load_tree(tree_arg, m)));
                return 0;
            }
            if (tree_shapes->parsed()) {
                auto all = enumerate_shapes(m);
                std::cout << "m " << m << " shapes " << all.size() << "\n";
                for (const auto& t : all) std::cout << kind_name(t.kind) << " " << shape_key(t) << "\n";
                return 0;
            }

            if (alg_basis->parsed() || alg_cartan->parsed()) {
                auto A = load_algebra<F>(tree_arg, m);
                if (alg_basis->parsed()) std::cout << "field: " << FieldOps<F>::name() << "\ndim: " << A.total_dim() << "\n";
                std::cout << "cartan:\n";
                for (int i = 1; i <= A.n(); ++i) {
                    for (int j = 1; j <= A.n(); ++j) std::cout << (j > 1 ? " " : "") << A.dim(i, j);
                    std::cout << "\n";
                }
                if (alg_basis->parsed())
                    for (int i = 1; i <= A.n(); ++i)
                        for (int j = 1; j <= A.n(); ++j) {
                            if (A.dim(i, j) == 0) continue;
                            std::cout << "hom P" << i << " P" << j << ":";
                            for (const auto& b : A.hom[i][j]) std::cout << " " << A.path_name(b);
                            std::cout << "\n";
                        }
                return 0;
            }

            if (cx_hom->parsed() || cx_reduce->parsed() || cx_iso->parsed()) {
                auto A = load_algebra<F>(tree_arg, m);
                auto X = load_complex(A, xfile);
                if (cx_reduce->parsed()) {
                    std::cout << complex_to_text(A, reduce(A, X));
                    return 0;
                }
                auto Y = load_complex(A, yfile);
                if (cx_hom->parsed()) {
                    std::cout << "dim Hom(X, Y[" << hom_shift << "]) = " << hom_K_dim(A, X, Y, hom_shift) << "\n";
                    return 0;
                }
                auto r = is_isomorphic(A, X, Y, cfg.seed);
                std::cout << "isomorphic: " << (r.iso ? "yes" : "no") << "\n";
                return 0;
            }

            if (mut_run->parsed()) {
                auto t = load_tree(tree_arg, m);
                auto A = compute_basis(build_presentation<F>(t));
                auto w = parse_mutation_word(word_arg, t.m);
                MutationOptions opt;
                opt.verify_approx = cfg.verbosity > 0;
                auto T = apply_mutations(TiltingComplex<F>::regular(A), w, opt);
                auto t2 = apply_word(t, w);
                std::cout << "word: " << w.str() << "\n";
                print_summands(A, T, cfg.verbosity);
                std::cout << "tree:\n" << tree_to_text(t2);
                if (t2.kind != TreeKind::Plain) std::cout << "sigma: " << perm_line(standard_labeling(t2)) << "\n";
                return 0;
            }
            if (mut_val->parsed()) {
                auto t = load_tree(tree_arg, m);
                if (label < 1 || label > t.m) throw UsageError("label out of range");
                int d = dir_arg == "-" ? -1 : +1;
                auto r = cross_validate<F>(t, label, d);
                std::cout << "rule " << r.rule << " " << kind_name(r.from) << " -> " << kind_name(r.to) << "\n";
                std::cout << "cartan " << (r.cartan_ok ? "ok" : "mismatch") << "\nsummand "
                          << (r.summand_ok ? "ok" : "mismatch") << "\ntilting " << (r.tilting_ok ? "ok" : "no") << "\n";
                for (const auto& f : r.findings)
                    std::cout << "FINDING\tmutation\tj=" << label << dir_arg << "\tclean\t" << f << "\n";
                return r.ok() ? 0 : 1;
            }

            if (stdseq->parsed()) {
                auto t = load_tree(tree_arg, m);
                if (t.kind == TreeKind::Plain || !is_standard(t)) throw UsageError(tree_arg + ": tree is not standardly labeled");
                std::cout << "word: " << standard_sequence(t).str() << "\n";
                if (with_complex) {
                    auto A = lambda_algebra<F>(t.m);
                    auto S = standard_complex(t, A);
                    for (int i = 1; i <= t.m; ++i) std::cout << "summand " << i << ":\n" << complex_to_text(A, S[i - 1]);
                }
                return 0;
            }

            if (tw_eval->parsed()) {
                auto w = parse_gword(word_arg, m);
                auto A = lambda_algebra<F>(m);
                TwistFrame<F> fr(A);
                auto s = eval_gword(fr, w);
                std::cout << "word: " << w.str() << "\nunit: " << s.unit.get_str() << "\nshift: " << s.shift << "\n";
                print_summands(A, s.T, cfg.verbosity);
                return 0;
            }
            if (tw_recipe->parsed()) {
                if (label < 1 || label > m) throw UsageError("index out of range");
                std::cout << twist_recipe(m, label, inverse ? -1 : +1).str() << "\n";
                return 0;
            }

            if (dec->parsed()) {
                auto w = parse_mutation_word(word_arg, m);
                auto A = lambda_algebra<F>(m);
                TwistFrame<F> fr(A);
                Decomposition d;
                try {
                    d = decompose(fr, w);
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                } catch (const std::runtime_error& e) {
                    std::cout << "FINDING\ttwists\t" << w.str() << "\tpic-equal to the replay\t" << e.what() << "\n";
                    return 1;
                }
                std::cout << "word: " << d.word.str() << "\nlabels: " << perm_line(d.final_labels) << "\n";
                if (!d.path.steps.empty() && !(d.path == w)) std::cout << "path: " << d.path.str() << "\n";
                for (const auto& c : d.steps) std::cout << "step: " << c.str() << "\n";
                std::cout << "verified: pic0\n";
                return 0;
            }

            if (grp_nf->parsed()) {
                std::cout << gm_normal_form(m, parse_gword(word_arg, m)).str() << "\n";
                return 0;
            }
            if (grp_eq->parsed()) {
                auto a = gm_normal_form(m, parse_gword(word_arg, m)), b = gm_normal_form(m, parse_gword(second_arg, m));
                std::cout << (a == b ? "equal" : "different") << "\n" << a.str() << "\n" << b.str() << "\n";
                return 0;
            }
            if (grp_braid->parsed()) {
                auto w = parse_gword(word_arg, m);
                for (const auto& l : w.letters)
                    if (l.kind != GLetter::Sigma) throw UsageError("braid words take sigma letters only");
                std::cout << greedy_nf(m, w).str() << "\n";
                return 0;
            }

            if (ver->parsed()) {
                verify::Options o;
                if (cfg.m_given) o.ms = {m};
                o.seed = cfg.seed;
                o.samples = samples;
                std::string name = item;
                if (auto c = item.find(':'); c != std::string::npos) {
                    name = item.substr(0, c);
                    o.only = item.substr(c + 1);
                    if (name != "appendix") throw UsageError("only appendix takes a case: " + item);
                    if (!case_from_name(o.only)) throw UsageError("unknown case " + o.only);
                }
                bool found = false, pass = true;
                for (const auto& s : verify::suites<F>()) {
                    if (name != "all" && s.name != name) continue;
                    found = true;
                    auto r = s.run(o);
                    print_report(r);
                    pass = pass && r.pass();
                }
                if (!found) throw UsageError("unknown verify item " + item);
                return pass ? 0 : 1;
            }

            if (dot->parsed()) {
                std::cout << tree_to_dot(load_tree(tree_arg, m));
                return 0;
            }
            throw UsageError("no command");
        });
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
}
