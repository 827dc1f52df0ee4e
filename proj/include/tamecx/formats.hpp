#pragma once

// Line-oriented text documents for tame complexes, tame maps, zigzags and filtrations, plus
// ingestion of filtered simplicial complexes and emitters for Betti diagrams.
//
// Every document starts with "tamecx <kind> v1" and ends with "end". '#' starts a comment.
// Matrices are written on one line as rows separated by ';', e.g. "d 0 = 1 0; 0 1". Entries are
// integers reduced mod p. Omitted matrices are zero.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tamecx/zigzag.hpp"

namespace tamecx {

enum class DocumentKind { tame_complex, tame_map, zigzag, filtration };

inline std::string_view kind_name(DocumentKind k) {
    switch (k) {
    case DocumentKind::tame_complex: return "tame-complex";
    case DocumentKind::tame_map: return "tame-map";
    case DocumentKind::zigzag: return "zigzag";
    case DocumentKind::filtration: return "filtration";
    }
    return "";
}

/// Which prime to use: `forced` wins over a "field" line, which wins over `fallback`.
struct FieldChoice {
    std::optional<std::uint32_t> forced;
    std::uint32_t fallback = 2;
};

namespace detail {

struct Token {
    std::string text;
    std::size_t column;
};

struct Line {
    std::size_t number;
    std::vector<Token> tokens;

    const std::string& word(std::size_t i) const { return tokens[i].text; }
    std::size_t col(std::size_t i) const { return i < tokens.size() ? tokens[i].column : end_column; }
    std::size_t end_column = 1;
};

inline std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view raw = text.substr(pos, eol - pos);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            const char c = raw[i];
            if (c == ' ' || c == '\t' || c == '\r') {
                ++i;
            } else if (c == ';' || c == '=' || c == '@') {
                line.tokens.push_back({std::string(1, c), i + 1});
                ++i;
            } else {
                std::size_t j = i;
                while (j < raw.size() && std::string_view(" \t\r;=@").find(raw[j]) == std::string_view::npos) ++j;
                line.tokens.push_back({std::string(raw.substr(i, j - i)), i + 1});
                i = j;
            }
        }
        line.end_column = raw.size() + 1;
        if (!line.tokens.empty()) out.push_back(std::move(line));
        if (eol == text.size()) break;
        pos = eol + 1;
    }
    return out;
}

[[noreturn]] inline void fail(const Line& l, std::size_t token, const std::string& msg) {
    throw ParseError(l.number, l.col(token), msg);
}

inline void expect_count(const Line& l, std::size_t n, const std::string& form) {
    if (l.tokens.size() != n) fail(l, std::min(n, l.tokens.size()), "expected '" + form + "'");
}

inline std::int64_t parse_int(const Line& l, std::size_t i) {
    if (i >= l.tokens.size()) fail(l, i, "expected an integer");
    const std::string& s = l.word(i);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail(l, i, "'" + s + "' is not an integer");
    return v;
}

inline std::size_t parse_count(const Line& l, std::size_t i) {
    const auto v = parse_int(l, i);
    if (v < 0) fail(l, i, "expected a non-negative integer");
    return static_cast<std::size_t>(v);
}

inline Param parse_param(const Line& l, std::size_t i) {
    if (i >= l.tokens.size()) fail(l, i, "expected a parameter");
    try {
        return Param::parse(l.word(i));
    } catch (const PreconditionError& e) {
        fail(l, i, e.what());
    }
}

/// A matrix line "<tag> <n> = r; r; ..." kept raw until its shape is known.
struct RawMatrix {
    Line line;
    std::size_t index;
    std::vector<std::vector<std::int64_t>> rows;
};

inline RawMatrix parse_matrix_line(const Line& l) {
    if (l.tokens.size() < 4 || l.word(2) != "=") fail(l, std::min<std::size_t>(2, l.tokens.size()), "expected '" + l.word(0) + " <degree> = <rows>'");
    RawMatrix m{l, parse_count(l, 1), {{}}};
    for (std::size_t i = 3; i < l.tokens.size(); ++i) {
        if (l.word(i) == ";") {
            m.rows.emplace_back();
            continue;
        }
        m.rows.back().push_back(parse_int(l, i));
    }
    for (const auto& r : m.rows)
        if (r.size() != m.rows.front().size()) fail(l, 3, "rows of unequal length");
    if (m.rows.front().empty()) fail(l, 3, "empty matrix row");
    return m;
}

inline FieldMatrix shape_matrix(const RawMatrix& m, Field f, std::size_t rows, std::size_t cols) {
    if (m.rows.size() != rows || m.rows.front().size() != cols)
        fail(m.line, 3, "matrix is " + std::to_string(m.rows.size()) + "x" + std::to_string(m.rows.front().size()) +
                            ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
    return FieldMatrix::from_rows(f, m.rows);
}

struct Document {
    DocumentKind kind;
    std::vector<Line> lines; // body, without header and end
    std::optional<Field> field;
};

inline DocumentKind kind_from(const Line& l) {
    if (l.tokens.size() != 3 || l.word(0) != "tamecx" || l.word(2) != "v1")
        fail(l, 0, "expected a header 'tamecx <kind> v1'");
    for (auto k : {DocumentKind::tame_complex, DocumentKind::tame_map, DocumentKind::zigzag, DocumentKind::filtration})
        if (l.word(1) == kind_name(k)) return k;
    fail(l, 1, "unknown document kind '" + l.word(1) + "'");
}

inline Document read_document(std::string_view text, FieldChoice choice, std::optional<DocumentKind> want) {
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, 1, "empty document");
    Document doc{kind_from(lines.front()), {}, {}};
    if (want && doc.kind != *want)
        fail(lines.front(), 1, "expected a " + std::string(kind_name(*want)) + " document");
    const Line& last = lines.back();
    if (lines.size() < 2 || last.tokens.size() != 1 || last.word(0) != "end") fail(last, last.tokens.size(), "missing 'end'");
    std::size_t i = 1;
    std::optional<std::uint32_t> declared;
    if (i + 1 < lines.size() && lines[i].word(0) == "field") {
        expect_count(lines[i], 2, "field <p>");
        const auto p = parse_int(lines[i], 1);
        if (p < 2 || p >= (std::int64_t{1} << 31) || !Field::is_prime(static_cast<std::uint32_t>(p)))
            fail(lines[i], 1, "field modulus " + lines[i].word(1) + " is not a prime below 2^31");
        declared = static_cast<std::uint32_t>(p);
        ++i;
    }
    doc.field = Field(choice.forced ? *choice.forced : declared ? *declared : choice.fallback);
    doc.lines.assign(lines.begin() + static_cast<std::ptrdiff_t>(i), lines.end() - 1);
    return doc;
}

/// A "dims" line and its "d" lines, before shapes are checked.
struct RawComplex {
    Line at;
    std::vector<std::size_t> dims;
    std::vector<RawMatrix> diffs;
};

inline ChainComplex build_complex(const RawComplex& r, Field f, const std::string& where) {
    auto dim = [&](std::size_t n) { return n < r.dims.size() ? r.dims[n] : std::size_t{0}; };
    std::vector<FieldMatrix> d;
    for (std::size_t n = 0; n + 1 < r.dims.size(); ++n) d.push_back(FieldMatrix::zero(f, dim(n), dim(n + 1)));
    std::vector<bool> seen(d.size(), false);
    for (const auto& m : r.diffs) {
        if (m.index >= d.size()) fail(m.line, 1, "no differential " + std::to_string(m.index) + " in " + where);
        if (seen[m.index]) fail(m.line, 1, "differential " + std::to_string(m.index) + " given twice");
        seen[m.index] = true;
        d[m.index] = shape_matrix(m, f, dim(m.index), dim(m.index + 1));
    }
    try {
        return ChainComplex(f, r.dims, std::move(d));
    } catch (const PreconditionError& e) {
        fail(r.at, 0, where + ": " + e.what());
    }
}

inline std::vector<FieldMatrix> build_components(const std::vector<RawMatrix>& raw, Field f, const ChainComplex& s,
                                                 const ChainComplex& t) {
    std::vector<FieldMatrix> c(std::max(s.length(), t.length()));
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = FieldMatrix::zero(f, t.dim(n), s.dim(n));
    std::vector<bool> seen(c.size(), false);
    for (const auto& m : raw) {
        if (m.index >= c.size()) fail(m.line, 1, "no component in degree " + std::to_string(m.index));
        if (seen[m.index]) fail(m.line, 1, "component " + std::to_string(m.index) + " given twice");
        seen[m.index] = true;
        c[m.index] = shape_matrix(m, f, t.dim(m.index), s.dim(m.index));
    }
    return c;
}

/// Reads "dims" and "d" lines starting at lines[i]; stops at any other keyword.
inline RawComplex read_complex(const std::vector<Line>& lines, std::size_t& i, const Line& at) {
    RawComplex r{at, {}, {}};
    bool dims_seen = false;
    for (; i < lines.size(); ++i) {
        const Line& l = lines[i];
        if (l.word(0) == "dims") {
            if (dims_seen) fail(l, 0, "'dims' given twice");
            dims_seen = true;
            for (std::size_t k = 1; k < l.tokens.size(); ++k) r.dims.push_back(parse_count(l, k));
            while (!r.dims.empty() && r.dims.back() == 0) r.dims.pop_back();
        } else if (l.word(0) == "d") {
            if (!dims_seen) fail(l, 0, "'d' before 'dims'");
            r.diffs.push_back(parse_matrix_line(l));
        } else {
            break;
        }
    }
    if (!dims_seen) fail(at, 0, "missing 'dims'");
    return r;
}

inline void write_matrix(std::ostringstream& os, const std::string& tag, std::size_t n, const FieldMatrix& m) {
    if (m.is_zero()) return;
    os << tag << ' ' << n << " =";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r > 0) os << " ;";
        for (std::size_t c = 0; c < m.cols(); ++c) os << ' ' << m(r, c);
    }
    os << '\n';
}

inline void write_complex(std::ostringstream& os, const ChainComplex& x) {
    os << "dims";
    for (auto d : x.dims()) os << ' ' << d;
    os << '\n';
    for (std::size_t n = 0; n + 1 < x.length(); ++n) write_matrix(os, "d", n, x.d(n));
}

inline void write_header(std::ostringstream& os, DocumentKind k, Field f) {
    os << "tamecx " << kind_name(k) << " v1\nfield " << f.modulus() << '\n';
}

} // namespace detail

/// Kind of a document from its header line.
inline DocumentKind document_kind(std::string_view text) {
    auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(1, 1, "empty document");
    return detail::kind_from(lines.front());
}

// ---------------------------------------------------------------------------
// Tame complexes

inline TameComplex parse_tame(std::string_view text, FieldChoice choice = {}) {
    auto doc = detail::read_document(text, choice, DocumentKind::tame_complex);
    const Field f = *doc.field;
    const auto& lines = doc.lines;
    Grid grid;
    std::vector<ChainComplex> values;
    std::vector<ChainMap> steps;
    std::size_t i = 0;
    if (lines.empty()) throw ParseError(1, 1, "a tame complex needs at least one point");
    while (i < lines.size()) {
        const detail::Line& head = lines[i];
        if (head.word(0) != "point") detail::fail(head, 0, "expected 'point <t>'");
        detail::expect_count(head, 2, "point <t>");
        const Param t = detail::parse_param(head, 1);
        if (t.is_infinite()) detail::fail(head, 1, "grid points are finite");
        if (!grid.empty() && !(grid.back() < t)) detail::fail(head, 1, "points must be strictly increasing");
        ++i;
        auto raw = detail::read_complex(lines, i, head);
        std::vector<detail::RawMatrix> in;
        for (; i < lines.size() && lines[i].word(0) == "in"; ++i) {
            if (grid.empty()) detail::fail(lines[i], 0, "the first point has no incoming transition");
            in.push_back(detail::parse_matrix_line(lines[i]));
        }
        const std::string where = "point " + t.to_string();
        values.push_back(detail::build_complex(raw, f, where));
        if (!grid.empty()) {
            auto c = detail::build_components(in, f, values[values.size() - 2], values.back());
            try {
                steps.emplace_back(values[values.size() - 2], values.back(), std::move(c));
            } catch (const PreconditionError& e) {
                detail::fail(head, 0, "transition into " + where + " is not a chain map: " + e.what());
            }
        }
        grid.push_back(t);
    }
    return kan_extension(values, steps, grid);
}

inline std::string serialize_tame(const TameComplex& x) {
    std::ostringstream os;
    detail::write_header(os, DocumentKind::tame_complex, x.field());
    for (std::size_t a = 0; a < x.size(); ++a) {
        os << "point " << x.grid()[a].to_string() << '\n';
        detail::write_complex(os, x.value(a));
        if (a == 0) continue;
        const ChainMap& s = x.step(a);
        for (std::size_t n = 0; n < x.value(a).length(); ++n) detail::write_matrix(os, "in", n, s[n]);
    }
    os << "end\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Tame maps, given on the merged grid of their endpoints

inline TameMap parse_tame_map(std::string_view text, const TameComplex& source, const TameComplex& target,
                              FieldChoice choice = {}) {
    auto doc = detail::read_document(text, choice, DocumentKind::tame_map);
    const Field f = *doc.field;
    require(f == source.field() && f == target.field(), "map and objects are over different fields");
    auto [s, t] = common_grid(source, target);
    const auto& lines = doc.lines;
    std::vector<ChainMap> comps;
    std::size_t i = 0;
    while (i < lines.size()) {
        const detail::Line& head = lines[i];
        if (head.word(0) != "point") detail::fail(head, 0, "expected 'point <t>'");
        detail::expect_count(head, 2, "point <t>");
        const Param p = detail::parse_param(head, 1);
        const std::size_t a = comps.size();
        if (a >= s.size() || !(s.grid()[a] == p))
            detail::fail(head, 1, "expected the next point of the merged grid" +
                                      (a < s.size() ? " (" + s.grid()[a].to_string() + ")" : std::string()));
        std::vector<detail::RawMatrix> raw;
        for (++i; i < lines.size() && lines[i].word(0) == "c"; ++i) raw.push_back(detail::parse_matrix_line(lines[i]));
        auto c = detail::build_components(raw, f, s.value(a), t.value(a));
        try {
            comps.emplace_back(s.value(a), t.value(a), std::move(c));
        } catch (const PreconditionError& e) {
            detail::fail(head, 0, "component at " + p.to_string() + " is not a chain map: " + e.what());
        }
    }
    if (comps.size() != s.size())
        throw ParseError(lines.empty() ? 1 : lines.back().number, 1,
                         "map lists " + std::to_string(comps.size()) + " points, the merged grid has " +
                             std::to_string(s.size()));
    return {s, t, std::move(comps)};
}

inline std::string serialize_tame_map(const TameMap& g) {
    std::ostringstream os;
    detail::write_header(os, DocumentKind::tame_map, g.source().field());
    for (std::size_t a = 0; a < g.size(); ++a) {
        os << "point " << g.grid()[a].to_string() << '\n';
        for (std::size_t n = 0; n < std::max(g.source().value(a).length(), g.target().value(a).length()); ++n)
            detail::write_matrix(os, "c", n, g[a][n]);
    }
    os << "end\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Zigzags

inline DiscreteZigzag parse_zigzag(std::string_view text, FieldChoice choice = {}) {
    auto doc = detail::read_document(text, choice, DocumentKind::zigzag);
    const Field f = *doc.field;
    const auto& lines = doc.lines;
    if (lines.empty() || lines[0].word(0) != "profile")
        throw ParseError(lines.empty() ? 1 : lines[0].number, 1, "expected 'profile <r|l letters>'");
    detail::expect_count(lines[0], 2, "profile <r|l letters>");
    Profile c;
    try {
        c = Profile::parse(lines[0].word(1));
    } catch (const PreconditionError& e) {
        detail::fail(lines[0], 1, e.what());
    }
    std::vector<std::optional<detail::RawComplex>> spaces(c.k() + 1);
    std::vector<std::optional<std::pair<detail::Line, std::vector<detail::RawMatrix>>>> maps(c.k() + 1);
    std::size_t i = 1;
    while (i < lines.size()) {
        const detail::Line& head = lines[i];
        detail::expect_count(head, 2, head.word(0) + " <index>");
        const std::size_t a = detail::parse_count(head, 1);
        ++i;
        if (head.word(0) == "space") {
            if (a > c.k()) detail::fail(head, 1, "no space " + std::to_string(a) + " in a zigzag of length " + std::to_string(c.k()));
            if (spaces[a]) detail::fail(head, 1, "space " + std::to_string(a) + " given twice");
            spaces[a] = detail::read_complex(lines, i, head);
        } else if (head.word(0) == "map") {
            if (a < 1 || a > c.k()) detail::fail(head, 1, "maps are numbered 1.." + std::to_string(c.k()));
            if (maps[a]) detail::fail(head, 1, "map " + std::to_string(a) + " given twice");
            std::vector<detail::RawMatrix> raw;
            for (; i < lines.size() && lines[i].word(0) == "m"; ++i) raw.push_back(detail::parse_matrix_line(lines[i]));
            maps[a] = {head, std::move(raw)};
        } else {
            detail::fail(head, 0, "expected 'space <a>' or 'map <a>'");
        }
    }
    const std::size_t end_line = lines.back().number + 1;
    std::vector<ChainComplex> xs;
    for (std::size_t a = 0; a <= c.k(); ++a) {
        if (!spaces[a]) throw ParseError(end_line, 1, "missing space " + std::to_string(a));
        xs.push_back(detail::build_complex(*spaces[a], f, "space " + std::to_string(a)));
    }
    std::vector<ChainMap> ms;
    for (std::size_t a = 1; a <= c.k(); ++a) {
        if (!maps[a]) throw ParseError(end_line, 1, "missing map " + std::to_string(a));
        const bool right = c.at(a) == Direction::r;
        const ChainComplex& from = right ? xs[a - 1] : xs[a];
        const ChainComplex& to = right ? xs[a] : xs[a - 1];
        auto comps = detail::build_components(maps[a]->second, f, from, to);
        try {
            ms.emplace_back(from, to, std::move(comps));
        } catch (const PreconditionError& e) {
            detail::fail(maps[a]->first, 0, "map " + std::to_string(a) + " is not a chain map: " + e.what());
        }
    }
    return {c, std::move(xs), std::move(ms)};
}

inline std::string serialize_zigzag(const DiscreteZigzag& z) {
    std::ostringstream os;
    detail::write_header(os, DocumentKind::zigzag, z.field());
    os << "profile " << z.profile().to_string() << '\n';
    for (std::size_t a = 0; a <= z.k(); ++a) {
        os << "space " << a << '\n';
        detail::write_complex(os, z.space(a));
    }
    for (std::size_t a = 1; a <= z.k(); ++a) {
        os << "map " << a << '\n';
        const ChainMap& m = z.map(a);
        for (std::size_t n = 0; n < std::max(m.source().length(), m.target().length()); ++n)
            detail::write_matrix(os, "m", n, m[n]);
    }
    os << "end\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Filtered simplicial complexes

struct FilteredSimplex {
    std::vector<std::size_t> vertices; // strictly increasing
    Param value;
    friend bool operator==(const FilteredSimplex&, const FilteredSimplex&) = default;
};

struct Filtration {
    std::vector<FilteredSimplex> simplices;
    friend bool operator==(const Filtration&, const Filtration&) = default;
};

namespace detail {

inline std::string simplex_name(const std::vector<std::size_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s + "]";
}

} // namespace detail

/// Lines "v0 v1 ... @ t". Faces must be listed before their cofaces, with values no larger.
inline Filtration parse_filtration(std::string_view text) {
    auto doc = detail::read_document(text, {}, DocumentKind::filtration);
    Filtration out;
    std::map<std::vector<std::size_t>, Param> seen;
    for (const auto& l : doc.lines) {
        std::size_t at = l.tokens.size();
        for (std::size_t i = 0; i < l.tokens.size(); ++i)
            if (l.word(i) == "@") at = i;
        if (at == l.tokens.size()) detail::fail(l, 0, "expected '<vertices> @ <value>'");
        if (at == 0) detail::fail(l, 0, "a simplex needs at least one vertex");
        detail::expect_count(l, at + 2, "<vertices> @ <value>");
        FilteredSimplex s{{}, detail::parse_param(l, at + 1)};
        if (s.value.is_infinite()) detail::fail(l, at + 1, "filtration values are finite");
        for (std::size_t i = 0; i < at; ++i) {
            s.vertices.push_back(detail::parse_count(l, i));
            if (i > 0 && s.vertices[i] <= s.vertices[i - 1]) detail::fail(l, i, "vertices must be strictly increasing");
        }
        const std::string name = detail::simplex_name(s.vertices);
        if (seen.contains(s.vertices)) detail::fail(l, 0, "simplex " + name + " listed twice");
        if (s.vertices.size() > 1) {
            for (std::size_t skip = 0; skip < s.vertices.size(); ++skip) {
                auto face = s.vertices;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(skip));
                auto it = seen.find(face);
                if (it == seen.end())
                    detail::fail(l, 0, "simplex " + name + " appears before its face " + detail::simplex_name(face));
                if (s.value < it->second)
                    detail::fail(l, at + 1, "simplex " + name + " enters before its face " + detail::simplex_name(face));
            }
        }
        seen.emplace(s.vertices, s.value);
        out.simplices.push_back(std::move(s));
    }
    return out;
}

inline std::string serialize_filtration(const Filtration& f) {
    std::ostringstream os;
    os << "tamecx filtration v1\n";
    for (const auto& s : f.simplices) {
        for (auto v : s.vertices) os << v << ' ';
        os << "@ " << s.value.to_string() << '\n';
    }
    os << "end\n";
    return os.str();
}

/// Throws naming the first simplex listed before one of its faces or entering earlier than it.
inline void check_filtration(const Filtration& filt) {
    std::map<std::vector<std::size_t>, Param> seen;
    for (const auto& s : filt.simplices) {
        const std::string name = detail::simplex_name(s.vertices);
        require(!s.vertices.empty(), "a simplex needs at least one vertex");
        require(std::is_sorted(s.vertices.begin(), s.vertices.end()) &&
                    std::adjacent_find(s.vertices.begin(), s.vertices.end()) == s.vertices.end(),
                "simplex " + name + " has unsorted or repeated vertices");
        require(s.value.is_finite(), "simplex " + name + " has an infinite value");
        require(!seen.contains(s.vertices), "simplex " + name + " listed twice");
        for (std::size_t skip = 0; s.vertices.size() > 1 && skip < s.vertices.size(); ++skip) {
            auto face = s.vertices;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(skip));
            auto it = seen.find(face);
            require(it != seen.end(), "simplex " + name + " appears before its face " + detail::simplex_name(face));
            require(it->second <= s.value, "simplex " + name + " enters before its face " + detail::simplex_name(face));
        }
        seen.emplace(s.vertices, s.value);
    }
}

/// Simplicial chains of the sublevel sets, with the alternating face signs. The grid is the set of
/// filtration values with 0 added, transitions are the inclusions.
inline TameComplex ingest_filtration(const Filtration& filt, Field f) {
    check_filtration(filt);
    Grid grid{Param(0)};
    for (const auto& s : filt.simplices) grid.push_back(s.value);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::map<std::vector<std::size_t>, std::size_t> where; // position within its degree, file order
    std::vector<std::vector<std::size_t>> by_degree;       // simplex indices per degree
    for (std::size_t i = 0; i < filt.simplices.size(); ++i) {
        const auto& s = filt.simplices[i];
        const std::size_t n = s.vertices.size() - 1;
        if (by_degree.size() <= n) by_degree.resize(n + 1);
        where[s.vertices] = by_degree[n].size();
        by_degree[n].push_back(i);
    }

    std::vector<ChainComplex> values;
    std::vector<std::vector<std::vector<std::size_t>>> present(grid.size()); // [a][n] -> positions
    for (std::size_t a = 0; a < grid.size(); ++a) {
        present[a].resize(by_degree.size());
        std::vector<std::map<std::size_t, std::size_t>> local(by_degree.size());
        for (std::size_t n = 0; n < by_degree.size(); ++n)
            for (std::size_t k = 0; k < by_degree[n].size(); ++k)
                if (filt.simplices[by_degree[n][k]].value <= grid[a]) {
                    local[n][k] = present[a][n].size();
                    present[a][n].push_back(k);
                }
        std::vector<std::size_t> dims;
        for (const auto& p : present[a]) dims.push_back(p.size());
        std::vector<FieldMatrix> diffs;
        for (std::size_t n = 0; n + 1 < by_degree.size(); ++n) {
            FieldMatrix d(f, dims[n], dims[n + 1]);
            for (std::size_t col = 0; col < present[a][n + 1].size(); ++col) {
                const auto& v = filt.simplices[by_degree[n + 1][present[a][n + 1][col]]].vertices;
                for (std::size_t skip = 0; skip < v.size(); ++skip) {
                    auto face = v;
                    face.erase(face.begin() + static_cast<std::ptrdiff_t>(skip));
                    const std::size_t row = local[n].at(where.at(face));
                    d.set(row, col, f.reduce(skip % 2 == 0 ? 1 : -1));
                }
            }
            diffs.push_back(std::move(d));
        }
        values.emplace_back(f, std::move(dims), std::move(diffs));
    }
    std::vector<ChainMap> steps;
    for (std::size_t a = 1; a < grid.size(); ++a) {
        std::vector<FieldMatrix> c;
        for (std::size_t n = 0; n < by_degree.size(); ++n) {
            FieldMatrix m(f, present[a][n].size(), present[a - 1][n].size());
            for (std::size_t j = 0, i = 0; j < present[a - 1][n].size(); ++j) {
                while (present[a][n][i] != present[a - 1][n][j]) ++i;
                m.set(i, j, 1);
            }
            c.push_back(std::move(m));
        }
        steps.emplace_back(values[a - 1], values[a], std::move(c));
    }
    return {f, std::move(grid), std::move(values), std::move(steps)};
}

// ---------------------------------------------------------------------------
// Betti diagrams

enum class OutputFormat { csv, structured };

inline OutputFormat parse_output_format(std::string_view s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "structured" || s == "json") return OutputFormat::structured;
    throw PreconditionError("unknown format '" + std::string(s) + "'");
}

inline constexpr std::string_view csv_header = "degree,birth,death,multiplicity,diagonal";

inline std::string emit_diagrams(const BettiDiagrams& b, OutputFormat fmt) {
    if (fmt == OutputFormat::csv) {
        std::ostringstream os;
        os << csv_header << '\n';
        for (std::size_t n = 0; n < b.size(); ++n)
            for (const auto& p : b[n].points())
                os << n << ',' << p.birth.to_string() << ',' << p.death.to_string() << ',' << p.multiplicity << ','
                   << (p.birth == p.death ? "true" : "false") << '\n';
        return os.str();
    }
    nlohmann::ordered_json j;
    j["format"] = "tamecx betti-diagrams v1";
    j["diagrams"] = nlohmann::ordered_json::array();
    for (std::size_t n = 0; n < b.size(); ++n) {
        nlohmann::ordered_json pts = nlohmann::ordered_json::array();
        for (const auto& p : b[n].points())
            pts.push_back({{"birth", p.birth.to_string()},
                           {"death", p.death.to_string()},
                           {"multiplicity", p.multiplicity},
                           {"diagonal", p.birth == p.death}});
        j["diagrams"].push_back({{"degree", n}, {"points", std::move(pts)}});
    }
    return j.dump(2) + "\n";
}

/// Reads either emitted form back.
inline BettiDiagrams parse_diagrams(std::string_view text) {
    BettiDiagrams b;
    auto add = [&](std::size_t n, Param s, Param e, std::size_t m) {
        if (b.size() <= n) b.resize(n + 1);
        b[n].add(s, e, m);
    };
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
            for (const auto& d : j.at("diagrams"))
                for (const auto& p : d.at("points"))
                    add(d.at("degree").get<std::size_t>(), Param::parse(p.at("birth").get<std::string>()),
                        Param::parse(p.at("death").get<std::string>()), p.at("multiplicity").get<std::size_t>());
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(1, 1, std::string("malformed structured diagrams: ") + e.what());
        } catch (const PreconditionError& e) {
            throw ParseError(1, 1, e.what());
        }
        trim(b);
        return b;
    }
    std::size_t number = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (number == 1) {
            if (line != csv_header) throw ParseError(1, 1, "expected the header '" + std::string(csv_header) + "'");
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::vector<std::size_t> cols{1};
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) {
            f.push_back(cell);
            cols.push_back(cols.back() + cell.size() + 1);
        }
        if (f.size() != 5) throw ParseError(number, 1, "expected 5 fields");
        auto num = [&](std::size_t i) {
            std::size_t v = 0;
            auto [ptr, ec] = std::from_chars(f[i].data(), f[i].data() + f[i].size(), v);
            if (ec != std::errc() || ptr != f[i].data() + f[i].size())
                throw ParseError(number, cols[i], "'" + f[i] + "' is not a count");
            return v;
        };
        try {
            Param s = Param::parse(f[1]), e = Param::parse(f[2]);
            if (f[4] != (s == e ? "true" : "false")) throw ParseError(number, cols[4], "diagonal flag disagrees with the point");
            add(num(0), s, e, num(3));
        } catch (const PreconditionError& e) {
            throw ParseError(number, cols[1], e.what());
        }
    }
    if (number == 0) throw ParseError(1, 1, "empty document");
    trim(b);
    return b;
}

} // namespace tamecx
