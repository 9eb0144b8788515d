// Command-line front end: every analysis as a subcommand with stable,
// line-oriented textual output (LF endings, no color) so runs can be
// golden-file compared. Exit codes: 0 success, 2 usage error, 1 domain
// error.
#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ksctx/ksctx.hpp"

namespace {

ksctx::Scenario load_scenario(const std::string& path) {
    if (path.empty()) return ksctx::builtin_chsh();
    std::ifstream in(path);
    if (!in) throw ksctx::Error("cannot open scenario file: " + path);
    return ksctx::parse_scenario(in);
}

std::uint64_t seed_from_env() {
    const char* env = std::getenv("KSCTX_SEED");
    if (env == nullptr || *env == '\0') return 0;
    errno = 0;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0' || *env == '-')
        throw std::invalid_argument("KSCTX_SEED must be a nonnegative integer, got '" +
                                    std::string(env) + "'");
    return value;
}

std::string value_set_string(const std::set<int>& values) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (int v : values) {
        if (!first) out << ",";
        out << v;
        first = false;
    }
    out << "}";
    return out.str();
}

std::string facet_line(const ksctx::HalfSpace& h) {
    std::ostringstream out;
    for (const ksctx::Rational& x : h.normal) out << ksctx::detail::component_string(x) << " ";
    out << ksctx::detail::component_string(h.offset);
    return out.str();
}

void print_hypergraph_analysis(std::ostream& out, const std::string& prefix,
                               const ksctx::Hypergraph& hg,
                               const ksctx::StateEnumeration& enumeration) {
    out << prefix << "atoms=" << hg.atoms.size() << "\n";
    out << prefix << "contexts=" << hg.contexts.size() << "\n";
    out << prefix << "states=" << enumeration.states.size() << "\n";
    out << prefix << "exhaustive=" << (enumeration.exhaustive ? 1 : 0) << "\n";
    if (enumeration.exhaustive) {
        const ksctx::EmbeddabilityReport emb = ksctx::embeddability_checks(hg, enumeration);
        out << prefix << "unital=" << (emb.unital ? 1 : 0) << "\n";
        out << prefix << "separating=" << (emb.separating ? 1 : 0) << "\n";
        const ksctx::KsStatement statement = ksctx::ks_fraction_statement(enumeration.states.size());
        out << prefix << "per_quantum_contextual=" << (statement.undetermined ? "0 (undetermined)" : "1")
            << "\n";
    } else {
        out << prefix << "per_quantum_contextual=0 (undetermined)\n";
    }
}

/// One-shot reproduction of the headline numbers on labeled lines, all from
/// the built-in scenario and fixtures; fully deterministic.
void run_report(std::ostream& out) {
    using namespace ksctx;
    const Scenario s = builtin_chsh();

    const std::uint64_t total = assignment_count(s);
    std::uint64_t noncontextual = 0;
    std::set<int> all_values, noncontextual_values;
    for (std::uint64_t i = 0; i < total; ++i) {
        const Assignment a = assignment_from_index(s, i);
        const int value = functional_value(s, a);
        all_values.insert(value);
        if (is_noncontextual(s, a)) {
            ++noncontextual;
            noncontextual_values.insert(value);
        }
    }
    out << "assignments=" << total << "\n";
    out << "noncontextual=" << noncontextual << "\n";
    out << "classical_bound=" << maximize_functional(s, true) << "\n";
    out << "algebraic_bound=" << maximize_functional(s, false) << "\n";

    // the four assignment families: maximal-violation pair, then the two
    // fully noncontextual all-equal assignments
    const std::uint64_t family_index[4] = {254, 1, 255, 0};
    for (int row = 0; row < 4; ++row) {
        const Assignment a = assignment_from_index(s, family_index[row]);
        out << "table1_row" << (row + 1) << "_functional=" << functional_value(s, a) << "\n";
        out << "table1_row" << (row + 1) << "_contextual_count=" << contextuality_count(s, a)
            << "\n";
    }

    const std::vector<RationalVector> tetra =
        correlation_vertices(s, per_context_projection(s, 0));
    const std::vector<HalfSpace> tetra_facets = facets_from_vertices(tetra);
    out << "single_context_facet_count=" << tetra_facets.size() << "\n";
    for (std::size_t i = 0; i < tetra_facets.size(); ++i)
        out << "single_context_facet_" << (i + 1) << "=" << facet_line(tetra_facets[i]) << "\n";

    const std::vector<HalfSpace> reduced = restrict_facets_to_coordinate(tetra_facets, 2);
    Rational lower, upper;
    bool have_lower = false, have_upper = false;
    for (const HalfSpace& h : reduced) {
        const Rational bound = h.offset / h.normal[0];
        if (h.normal[0] > 0 && (!have_upper || bound < upper)) {
            upper = bound;
            have_upper = true;
        }
        if (h.normal[0] < 0 && (!have_lower || bound > lower)) {
            lower = bound;
            have_lower = true;
        }
    }
    out << "single_context_joint_bounds_reduced=" << detail::component_string(lower) << " "
        << detail::component_string(upper) << "\n";

    const std::vector<RationalVector> tetra_back = vertices_from_facets(tetra_facets);
    const std::vector<HalfSpace> tetra_facets_back = facets_from_vertices(tetra_back);
    out << "roundtrip_single_context="
        << ((tetra_back == tetra && tetra_facets_back == tetra_facets) ? "ok" : "mismatch")
        << "\n";

    std::vector<RationalVector> cube;
    for (int x : {-1, 1})
        for (int y : {-1, 1})
            for (int z : {-1, 1}) cube.push_back({Rational(x), Rational(y), Rational(z)});
    const std::vector<HalfSpace> cube_facets = facets_from_vertices(cube);
    const std::vector<RationalVector> cube_back = vertices_from_facets(cube_facets);
    const std::vector<HalfSpace> cube_facets_back = facets_from_vertices(cube_back);
    out << "roundtrip_cube="
        << ((cube_back == cube && cube_facets_back == cube_facets) ? "ok" : "mismatch") << "\n";

    for (const char* text : {"2", "9/4", "5/2", "11/4", "3", "707/250", "7/2", "4"}) {
        const Rational lambda = parse_rational(text);
        const ContextualityReport rep = min_contextual_fraction(s, lambda);
        out << "fraction(lambda=" << rational_string(lambda)
            << ")=" << rational_with_decimal(rep.min_contextual_fraction) << "\n";
    }

    const ContextualityReport tsirelson = min_contextual_fraction(s, kTsirelsonApproximation);
    out << "tsirelson_lambda=" << rational_with_decimal(tsirelson.lambda_target) << "\n";
    out << "tsirelson_fraction=" << rational_with_decimal(tsirelson.min_contextual_fraction)
        << "\n";
    out << "tsirelson_closed_form=" << kTsirelsonClosedFormDecimal << " (sqrt(2)-1)\n";
    out << "tsirelson_ratio=" << ratio_string(tsirelson.ratio_contextual_to_noncontextual) << "\n";

    out << "noncontextual_values=" << value_set_string(noncontextual_values) << "\n";
    out << "all_values=" << value_set_string(all_values) << "\n";

    StreamSpec spec;
    spec.n_total = 40;
    spec.n_contextual = 19;
    spec.seed = 7;
    const Stream stream = generate_stream(s, spec);
    out << "stream_n=" << spec.n_total << "\n";
    out << "stream_k=" << spec.n_contextual << "\n";
    out << "stream_seed=" << spec.seed << "\n";
    out << "stream_empirical=" << rational_with_decimal(empirical_functional(s, stream)) << "\n";

    const Hypergraph ks_fixture = parse_hypergraph(std::string(fixtures::kCabello18Hypergraph));
    print_hypergraph_analysis(out, "ks_fixture_", ks_fixture,
                              enumerate_two_valued_states(ks_fixture));
    const Hypergraph nonks_fixture = parse_hypergraph(std::string(fixtures::kPentagonHypergraph));
    print_hypergraph_analysis(out, "nonks_fixture_", nonks_fixture,
                              enumerate_two_valued_states(nonks_fixture));
}

int run(int argc, char** argv) {
    CLI::App app{"contextuality toolkit: assignment enumeration, correlation polytopes, "
                 "contextual fractions, Kochen-Specker analysis, seeded streams"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string format = "csv";
    std::string lambda_text;
    std::string tsirelson_text = "707/250";
    std::string ks_file;
    bool at_least = false;
    bool joints = false;
    bool restrict_noncontextual = false;
    std::size_t context_index = 0;
    std::uint64_t n = 0, k = 0, seed_value = 0, limit_value = 0;

    const auto add_scenario_option = [&](CLI::App* sub) {
        sub->add_option("--scenario", scenario_path, "scenario file (default: built-in CHSH)");
    };
    const auto add_format_option = [&](CLI::App* sub) {
        sub->add_option("--format", format, "csv or table (default csv)")
            ->check(CLI::IsMember({"csv", "table"}));
    };

    CLI::App* enumerate_cmd =
        app.add_subcommand("enumerate", "print the full table of counterfactual assignments");
    add_scenario_option(enumerate_cmd);
    add_format_option(enumerate_cmd);
    enumerate_cmd->callback([&] {
        const ksctx::Scenario s = load_scenario(scenario_path);
        if (format == "csv")
            ksctx::write_assignment_csv(s, std::cout);
        else
            ksctx::write_assignment_table(s, std::cout);
    });

    CLI::App* facets_cmd = app.add_subcommand(
        "facets", "H-representation of a correlation polytope projection");
    add_scenario_option(facets_cmd);
    CLI::Option* context_opt = facets_cmd->add_option(
        "--context", context_index,
        "project to (E(x_y), E(y_x), E(x_y y_x)) of this context (default 0)");
    CLI::Option* joints_opt = facets_cmd->add_flag(
        "--joints", joints, "project to the in-context joint expectations instead");
    joints_opt->excludes(context_opt);
    facets_cmd->add_flag("--noncontextual", restrict_noncontextual,
                         "use only noncontextual assignments as generators");
    facets_cmd->callback([&] {
        const ksctx::Scenario s = load_scenario(scenario_path);
        const std::vector<ksctx::Coordinate> projection =
            joints ? ksctx::joints_projection(s) : ksctx::per_context_projection(s, context_index);
        const auto vertices = ksctx::correlation_vertices(s, projection, restrict_noncontextual);
        std::cout << ksctx::h_repr_text(ksctx::facets_from_vertices(vertices));
    });

    CLI::App* bounds_cmd =
        app.add_subcommand("bounds", "classical and algebraic maxima of the functional");
    add_scenario_option(bounds_cmd);
    bounds_cmd->callback([&] {
        const ksctx::Scenario s = load_scenario(scenario_path);
        std::cout << "classical=" << ksctx::maximize_functional(s, true)
                  << " algebraic=" << ksctx::maximize_functional(s, false) << "\n";
    });

    CLI::App* fraction_cmd = app.add_subcommand(
        "fraction", "minimal contextual weight among mixtures reproducing a target value");
    add_scenario_option(fraction_cmd);
    fraction_cmd->add_option("--lambda", lambda_text, "target value as n/d or 'tsirelson'")
        ->required();
    fraction_cmd->add_option("--tsirelson-approx", tsirelson_text,
                             "rational stand-in for 2*sqrt(2) (default 707/250)");
    fraction_cmd->add_flag("--at-least", at_least,
                           "require expected value >= lambda instead of equality");
    fraction_cmd->callback([&] {
        const ksctx::Scenario s = load_scenario(scenario_path);
        const bool symbolic = lambda_text == "tsirelson";
        const ksctx::Rational lambda =
            symbolic ? ksctx::parse_rational(tsirelson_text) : ksctx::parse_rational(lambda_text);
        const ksctx::ContextualityReport report = ksctx::min_contextual_fraction(
            s, lambda, at_least ? ksctx::TargetMode::AtLeast : ksctx::TargetMode::Exact);
        std::cout << ksctx::report_text(report);
        if (symbolic)
            std::cout << "closed_form=" << ksctx::kTsirelsonClosedFormDecimal << " (sqrt(2)-1)\n";
    });

    CLI::App* simulate_cmd = app.add_subcommand(
        "simulate", "seeded stream of assignments with a prescribed contextual count");
    add_scenario_option(simulate_cmd);
    add_format_option(simulate_cmd);
    simulate_cmd->add_option("--n", n, "stream length")->required();
    CLI::Option* k_opt = simulate_cmd->add_option("--k", k, "number of contextual entries");
    CLI::Option* lambda_opt = simulate_cmd->add_option(
        "--lambda", lambda_text, "target value as n/d or 'tsirelson'; k derived by rounding");
    k_opt->excludes(lambda_opt);
    lambda_opt->excludes(k_opt);
    CLI::Option* seed_opt =
        simulate_cmd->add_option("--seed", seed_value, "RNG seed (default: KSCTX_SEED or 0)");
    simulate_cmd->callback([&] {
        if (k_opt->count() == 0 && lambda_opt->count() == 0)
            throw CLI::RequiredError("simulate: one of --k or --lambda");
        const ksctx::Scenario s = load_scenario(scenario_path);
        ksctx::StreamSpec spec;
        spec.n_total = n;
        spec.seed = seed_opt->count() > 0 ? seed_value : seed_from_env();
        std::optional<ksctx::Rational> lambda;
        if (lambda_opt->count() > 0) {
            lambda = lambda_text == "tsirelson" ? ksctx::kTsirelsonApproximation
                                                : ksctx::parse_rational(lambda_text);
            spec.n_contextual = ksctx::contextual_count_for_lambda(*lambda, n);
        } else {
            spec.n_contextual = k;
        }
        const ksctx::Stream stream = ksctx::generate_stream(s, spec);
        if (format == "csv")
            ksctx::write_stream_csv(s, stream, std::cout);
        else
            ksctx::write_stream_table(s, stream, std::cout);
        if (lambda) std::cout << "lambda=" << ksctx::rational_with_decimal(*lambda) << "\n";
        std::cout << "n=" << spec.n_total << "\n";
        std::cout << "k=" << spec.n_contextual << "\n";
        std::cout << "seed=" << spec.seed << "\n";
        std::cout << "empirical="
                  << ksctx::rational_with_decimal(ksctx::empirical_functional(s, stream)) << "\n";
    });

    CLI::App* ks_cmd =
        app.add_subcommand("ks", "two-valued states and embeddability checks of a hypergraph");
    ks_cmd->add_option("--file", ks_file, "hypergraph file (one context per line)")->required();
    CLI::Option* limit_opt =
        ks_cmd->add_option("--limit", limit_value, "stop after this many states");
    ks_cmd->callback([&] {
        std::ifstream in(ks_file);
        if (!in) throw ksctx::Error("cannot open hypergraph file: " + ks_file);
        const ksctx::Hypergraph hg = ksctx::parse_hypergraph(in);
        std::optional<std::uint64_t> limit;
        if (limit_opt->count() > 0) limit = limit_value;
        print_hypergraph_analysis(std::cout, "", hg, ksctx::enumerate_two_valued_states(hg, limit));
    });

    CLI::App* report_cmd =
        app.add_subcommand("report", "one-shot reproduction of the headline numbers");
    report_cmd->callback([&] { run_report(std::cout); });

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
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ksctx::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
