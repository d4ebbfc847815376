#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ccsim/hspec.hpp"
#include "ccsim/model.hpp"
#include "oracle.hpp"

using namespace ccsim;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::vector<fs::path> bundled_specs()
{
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(fs::path(CCSIM_SOURCE_DIR) / "hspec"))
        if (e.path().extension() == ".hspec")
            out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

hspec::Diagnostic diagnose(std::string_view text)
{
    try {
        (void)hspec::parse(text);
    } catch (const hspec::ParseError& e) {
        return e.diagnostic();
    }
    ADD_FAILURE() << "expected a diagnostic for: " << text;
    return {};
}

double max_term_difference(const TermList& x, const TermList& y)
{
    EXPECT_EQ(x.size(), y.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k) {
        const Matrix a = x.terms()[k].amplitude * x.terms()[k].op.matrix();
        const Matrix b = y.terms()[k].amplitude * y.terms()[k].op.matrix();
        worst = std::max(worst, oracle::max_abs(a - b));
        worst = std::max(worst, std::abs(x.terms()[k].frequency - y.terms()[k].frequency));
    }
    return worst;
}

}  // namespace

TEST(Hspec, ParsesTheGrammarExample)
{
    const auto spec = hspec::parse("mode a(6); qubit q1; param g = 2.5e3; term (i*g) * adag(a)*sm(q1) @ +1.0e4;");
    ASSERT_EQ(spec.terms.size(), 1u);
    EXPECT_EQ(spec.modes[0].cutoff, 6);
    EXPECT_EQ(spec.terms[0].factors.size(), 2u);
    EXPECT_EQ(spec.terms[0].factors[0].kind, FactorKind::Create);
    EXPECT_FALSE(spec.terms[0].add_conjugate);

    const TermList t = hspec::lower(spec, {false});
    EXPECT_NEAR(std::abs(t.terms()[0].amplitude - Complex(0, 2.5e3)), 0.0, 1e-12);
    EXPECT_DOUBLE_EQ(t.terms()[0].frequency, 1.0e4);
}

TEST(Hspec, SyntaxErrorAtOpenParenthesis)
{
    const auto d = diagnose("term g * a(");
    EXPECT_EQ(d.kind, hspec::Diagnostic::Kind::Syntax);
    EXPECT_EQ(d.span.line, 1);
    EXPECT_EQ(d.span.column, 11);
    EXPECT_EQ(d.expected, std::vector<std::string>{"identifier"});
}

TEST(Hspec, DiagnosticKindsAndSpans)
{
    auto d = diagnose("mode a(3);\nterm x * a(a);");
    EXPECT_EQ(d.kind, hspec::Diagnostic::Kind::Unbound);
    EXPECT_EQ(d.span.line, 2);
    EXPECT_EQ(d.span.column, 6);

    d = diagnose("mode a(3);\nqubit a;");
    EXPECT_EQ(d.kind, hspec::Diagnostic::Kind::Duplicate);
    EXPECT_EQ(d.span.column, 7);
    EXPECT_NE(d.message.find("1:6"), std::string::npos);

    d = diagnose("mode a(3); term 1 $ a(a);");
    EXPECT_EQ(d.kind, hspec::Diagnostic::Kind::Lexical);
    EXPECT_EQ(d.span.column, 19);

    d = diagnose("qubit q; term 1 * a(q);");
    EXPECT_EQ(d.kind, hspec::Diagnostic::Kind::Semantic);

    d = diagnose("mode a(3) qubit q;");
    EXPECT_EQ(d.kind, hspec::Diagnostic::Kind::Syntax);
    EXPECT_EQ(d.span.column, 11);
    EXPECT_NE(d.to_string().find("1:11: syntax error"), std::string::npos);
}

TEST(Hspec, DiagnosticsAreDeterministic)
{
    const std::string bad = "mode a(2);\nterm (1 + * a(a);";
    EXPECT_EQ(diagnose(bad).to_string(), diagnose(bad).to_string());
}

TEST(Hspec, NestingIsBounded)
{
    std::string deep = "term ";
    deep += std::string(100000, '(');
    const auto d = diagnose(deep);
    EXPECT_EQ(d.kind, hspec::Diagnostic::Kind::Syntax);
}

TEST(Hspec, RoundTripOnBundledFiles)
{
    const auto files = bundled_specs();
    ASSERT_GE(files.size(), 3u);
    for (const auto& f : files) {
        const auto spec = hspec::parse(slurp(f));
        const std::string text = hspec::serialize(spec);
        EXPECT_TRUE(hspec::parse(text) == spec) << f;
        EXPECT_EQ(hspec::serialize(hspec::parse(text)), text) << f;
    }
}

TEST(Hspec, SerializationIsWhitespaceAndOrderInsensitive)
{
    const auto a = hspec::parse("mode a(2);qubit q;term 2*a(a)*sp(q)@3+h.c.;term 1*sz(q);");
    const auto b = hspec::parse("# comment\nmode a( 2 ) ;\n qubit   q;\n term 1 * sz(q) ;\n"
                                "term 2 * a(a) * sp(q) @ 3 +h.c. ;\n");
    EXPECT_EQ(hspec::serialize(a), hspec::serialize(b));
    EXPECT_TRUE(a == b);
}

TEST(Hspec, ExpressionSerializationKeepsMeaning)
{
    const auto spec = hspec::parse("param x = 2; param y = 3; param z = x - (y - 1) / (x * (y + 1)) - -x;");
    const std::string text = hspec::serialize(*spec.params[2].value);
    EXPECT_EQ(text, "x - (y - 1)/(x*(y + 1)) - -x");
    const auto lowered = hspec::parse("param x = 2; param y = 3; param z = " + text + ";");
    EXPECT_TRUE(hspec::equal(*lowered.params[2].value, *spec.params[2].value));
}

TEST(Hspec, TwoAxisFileLowersToModelBuilder)
{
    const TermList fromfile = hspec::lower(hspec::parse(slurp(fs::path(CCSIM_SOURCE_DIR) / "hspec/two_axis.hspec")));
    ASSERT_EQ(fromfile.size(), 4u);
    const TermList built = model::two_axis_rwa(fromfile.space(), model::TwoAxisParams{});
    EXPECT_LT(max_term_difference(fromfile, built), 1e-12);
}

TEST(Hspec, FermionFileLowersToModelBuilder)
{
    const TermList fromfile =
        hspec::lower(hspec::parse(slurp(fs::path(CCSIM_SOURCE_DIR) / "hspec/fermion_two_ion.hspec")));
    const TermList built = model::fermion_interaction(fromfile.space(), model::FermionParams{});
    EXPECT_LT(max_term_difference(fromfile, built) / 1e5, 1e-12);
}

TEST(Hspec, BosonCavityFileLowersToModelBuilder)
{
    const TermList fromfile =
        hspec::lower(hspec::parse(slurp(fs::path(CCSIM_SOURCE_DIR) / "hspec/boson_cavity.hspec")));
    const TermList built = model::boson_cavity_rwa(fromfile.space(), model::BosonCavityParams{});
    EXPECT_LT(max_term_difference(fromfile, built) / 1e5, 1e-12);
}

TEST(Hspec, PairingIsEnforced)
{
    const auto paired = hspec::lower(hspec::parse("mode a(2); qubit q; term 0.5 * a(a)*sp(q) @ 2 +h.c.;"));
    EXPECT_TRUE(paired.is_hermitian_paired());

    const auto spec = hspec::parse("mode a(2); qubit q;\nterm 0.5 * a(a)*sp(q) @ 2;");
    try {
        (void)hspec::lower(spec);
        FAIL() << "expected a lowering error";
    } catch (const hspec::ParseError& e) {
        EXPECT_EQ(e.diagnostic().kind, hspec::Diagnostic::Kind::Lowering);
        EXPECT_EQ(e.diagnostic().span.line, 2);
        EXPECT_NE(e.diagnostic().message.find("a(a)*sp(q)"), std::string::npos);
    }
    EXPECT_NO_THROW(hspec::lower(spec, {false}));

    // Written-out conjugates count as a pair.
    EXPECT_NO_THROW(hspec::lower(hspec::parse("mode a(2); qubit q; term 2 * a(a)*sp(q) @ 1; "
                                              "term 2 * sm(q)*adag(a) @ -1;")));
}

TEST(Hspec, LoweringRejectsComplexFrequency)
{
    EXPECT_THROW(hspec::lower(hspec::parse("qubit q; term 1 * sz(q) @ 2*i +h.c.;")), hspec::ParseError);
}

TEST(Hspec, FromTermsRoundTrip)
{
    const auto s = make_space({3, 3}, 1);
    const TermList built = model::two_axis_rwa(s, model::TwoAxisParams{});
    const TermList back = hspec::lower(hspec::parse(hspec::serialize(hspec::from_terms(built))));
    EXPECT_LT(oracle::max_abs(back.at(0.37).matrix() - built.at(0.37).matrix()), 1e-14);
}

TEST(Hspec, FormatNumberIsExact)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const double v = std::ldexp(u(rng), static_cast<int>(rng() % 80) - 40);
        const std::string s = hspec::format_number(v);
        EXPECT_EQ(std::stod(s), v) << s;
    }
    EXPECT_EQ(hspec::format_number(1000.0), "1000");
}

TEST(Hspec, RandomMutationsNeverEscapeAsOtherExceptions)
{
    std::mt19937_64 rng(99);
    std::vector<std::string> seeds;
    for (const auto& f : bundled_specs())
        seeds.push_back(slurp(f));
    int parsed = 0;
    for (int k = 0; k < 2000; ++k) {
        std::string text = seeds[k % seeds.size()];
        const int edits = 1 + static_cast<int>(rng() % 4);
        for (int e = 0; e < edits && !text.empty(); ++e) {
            const std::size_t pos = rng() % text.size();
            switch (rng() % 3) {
            case 0: text.erase(pos, 1 + rng() % 3); break;
            case 1: text.insert(pos, 1, "();*@+-/ia0.9e#\n"[rng() % 16]); break;
            default: text[pos] = static_cast<char>(rng() % 256); break;
            }
        }
        try {
            (void)hspec::lower(hspec::parse(text), {false});
            ++parsed;
        } catch (const hspec::ParseError& e) {
            EXPECT_FALSE(e.diagnostic().message.empty());
        }
    }
    EXPECT_GT(parsed, 0);
}
