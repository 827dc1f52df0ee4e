// Command-line front end: ingest, cover, decompose and report Betti diagrams.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tamecx.hpp"

namespace {

using namespace tamecx;

struct Globals {
    std::optional<std::uint32_t> field;
    std::string output;
    std::string format = "csv";
};

/// A failure already phrased for the user.
struct Failure {
    std::string message;
};

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{"cannot open '" + path + "'"};
    return {std::istreambuf_iterator<char>(in), {}};
}

void write_output(const Globals& g, const std::string& text) {
    if (g.output.empty() || g.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(g.output, std::ios::binary);
    if (!out) throw Failure{"cannot write '" + g.output + "'"};
    out << text;
}

std::uint32_t env_field() {
    const char* v = std::getenv("TAMECX_FIELD");
    if (v == nullptr || *v == '\0') return 2;
    try {
        std::size_t used = 0;
        const unsigned long p = std::stoul(v, &used);
        if (used == std::string(v).size() && p < (1ul << 31) && Field::is_prime(static_cast<std::uint32_t>(p)))
            return static_cast<std::uint32_t>(p);
    } catch (const std::exception&) {
    }
    throw Failure{std::string("TAMECX_FIELD='") + v + "' is not a prime below 2^31"};
}

FieldChoice field_choice(const Globals& g) {
    if (g.field && !Field::is_prime(*g.field)) throw Failure{"--field " + std::to_string(*g.field) + " is not prime"};
    return {g.field, g.field ? *g.field : env_field()};
}

/// Diagnostics from the parser carry their position; prefix the file name.
template <class F>
auto with_file(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const ParseError& e) {
        throw Failure{path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " +
                      std::string(e.what()).substr(std::string(e.what()).find(": ") + 2)};
    } catch (const PreconditionError& e) {
        throw Failure{path + ": " + e.what()};
    }
}

/// Filtrations are ingested, tame complexes read directly.
TameComplex load_object(const Globals& g, const std::string& path) {
    const std::string text = read_input(path);
    const FieldChoice fc = field_choice(g);
    return with_file(path, [&] {
        if (document_kind(text) == DocumentKind::filtration)
            return ingest_filtration(parse_filtration(text), Field(fc.forced ? *fc.forced : fc.fallback));
        return parse_tame(text, fc);
    });
}

Grid parse_grid(const std::string& s) {
    Grid g;
    std::stringstream ss(s);
    for (std::string cell; std::getline(ss, cell, ',');) {
        try {
            g.push_back(Param::parse(cell));
        } catch (const PreconditionError& e) {
            throw Failure{"--grid: " + std::string(e.what())};
        }
    }
    try {
        check_grid(g);
    } catch (const PreconditionError& e) {
        throw Failure{"--grid: " + std::string(e.what())};
    }
    return g;
}

std::string describe(const TameComplex& x) {
    std::ostringstream os;
    os << "valid tame-complex over F_" << x.field().modulus() << ": " << x.size() << " grid points, length "
       << x.length() << ", " << (is_cofibrant(x) ? "cofibrant" : "not cofibrant") << '\n';
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimal covers, interval-sphere decompositions and Betti diagrams of tame chain complexes"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--field", g.field, "Prime field modulus (default: TAMECX_FIELD or 2)");
    app.add_option("-o,--output", g.output, "Write to this file instead of stdout");
    app.add_option("--format", g.format, "Diagram output: csv or structured")->check(CLI::IsMember({"csv", "structured", "json"}));

    std::string input, input_b, map_file, method = "cover-cofiber", grid;
    std::vector<std::string> endpoints;
    bool min_only = false;

    auto* betti_cmd = app.add_subcommand("betti", "Betti diagrams of the minimal cover");
    betti_cmd->add_option("input", input, "Filtration or tame complex")->required();
    betti_cmd->add_flag("--min", min_only, "Drop diagonal points");

    auto* decompose_cmd = app.add_subcommand("decompose", "Interval-sphere decomposition of a cofibrant input");
    decompose_cmd->add_option("input", input, "Filtration or tame complex")->required();

    auto* cover_cmd = app.add_subcommand("cover", "Minimal cover as a tame-complex document");
    cover_cmd->add_option("input", input, "Filtration or tame complex")->required();

    auto* morphism_cmd = app.add_subcommand("morphism-betti", "Betti diagrams of a morphism");
    morphism_cmd->add_option("source", input, "Source object")->required();
    morphism_cmd->add_option("target", input_b, "Target object")->required();
    morphism_cmd->add_option("map", map_file, "tame-map document on the merged grid")->required();
    morphism_cmd->add_option("--method", method, "minfact, cover-cofiber, cofiber-covers or min")
        ->check(CLI::IsMember({"minfact", "cover-cofiber", "cofiber-covers", "min"}));

    auto* zigzag_cmd = app.add_subcommand("zigzag", "Betti diagrams of a zigzag incarnation");
    zigzag_cmd->add_option("input", input, "zigzag document")->required();
    zigzag_cmd->add_option("--grid", grid, "Comma-separated grid t0,...,tk")->required();

    auto* validate_cmd = app.add_subcommand("validate", "Check a document and report violations");
    validate_cmd->add_option("input", input, "Any document")->required();
    validate_cmd->add_option("endpoints", endpoints, "Source and target, for tame-map documents")->expected(0, 2);

    CLI11_PARSE(app, argc, argv);

    try {
        const OutputFormat fmt = parse_output_format(g.format);
        if (*betti_cmd) {
            auto x = load_object(g, input);
            auto b = with_file(input, [&] { return min_only ? min_betti(x) : betti(x); });
            write_output(g, emit_diagrams(b, fmt));
        } else if (*decompose_cmd) {
            auto x = load_object(g, input);
            if (!is_cofibrant(x)) throw Failure{input + ": input is not cofibrant; use 'cover' or 'betti'"};
            write_output(g, emit_diagrams(decompose_cofibrant(x), fmt));
        } else if (*cover_cmd) {
            auto x = load_object(g, input);
            write_output(g, serialize_tame(minimal_cover(x).cover));
        } else if (*morphism_cmd) {
            auto x = load_object(g, input);
            auto y = load_object(g, input_b);
            const std::string text = read_input(map_file);
            auto m = with_file(map_file, [&] { return parse_tame_map(text, x, y, {x.field().modulus(), 2}); });
            write_output(g, emit_diagrams(morphism_betti(m, parse_method(method)).diagrams, fmt));
        } else if (*zigzag_cmd) {
            const std::string text = read_input(input);
            auto z = with_file(input, [&] { return parse_zigzag(text, field_choice(g)); });
            const Grid t = parse_grid(grid);
            if (t.size() != z.k() + 1)
                throw Failure{"--grid has " + std::to_string(t.size()) + " points, the zigzag needs " +
                              std::to_string(z.k() + 1)};
            write_output(g, emit_diagrams(zigzag_betti(z, t), fmt));
        } else if (*validate_cmd) {
            const std::string text = read_input(input);
            const FieldChoice fc = field_choice(g);
            std::string report = with_file(input, [&]() -> std::string {
                switch (document_kind(text)) {
                case DocumentKind::filtration: {
                    auto f = parse_filtration(text);
                    return "valid filtration: " + std::to_string(f.simplices.size()) + " simplices\n";
                }
                case DocumentKind::tame_complex: return describe(parse_tame(text, fc));
                case DocumentKind::zigzag: {
                    auto z = parse_zigzag(text, fc);
                    return "valid zigzag over F_" + std::to_string(z.field().modulus()) + ": profile " +
                           z.profile().to_string() + "\n";
                }
                case DocumentKind::tame_map: {
                    if (endpoints.size() != 2) throw PreconditionError("a tame-map needs its source and target");
                    auto x = load_object(g, endpoints[0]);
                    auto y = load_object(g, endpoints[1]);
                    auto m = parse_tame_map(text, x, y, {x.field().modulus(), 2});
                    return "valid tame-map on " + std::to_string(m.size()) + " grid points\n";
                }
                }
                return {};
            });
            write_output(g, report);
        }
    } catch (const Failure& f) {
        std::cerr << "tamecx: " << f.message << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "tamecx: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
