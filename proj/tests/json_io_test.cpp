#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include "cocycle_lab/error.hpp"
#include "cocycle_lab/json_io.hpp"
#include "cocycle_lab/numkernel/linalg.hpp"

using namespace cocycle_lab;
using json_io::Json;

namespace {

const std::filesystem::path kFixtures = COCYCLE_LAB_FIXTURE_DIR;

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no Error thrown";
    return ErrorKind::Usage;
}

bool bit_equal(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

}  // namespace

TEST(Dump, FloatsKeepSeventeenDigitsAndAFraction) {
    EXPECT_EQ(json_io::dump(Json(1.0), true), "1.0");
    EXPECT_EQ(json_io::dump(Json(0.1), true), "0.10000000000000001");
    EXPECT_EQ(json_io::dump(Json(-0.0), true), "0.0");
    EXPECT_EQ(json_io::dump(Json(1e300), true), "1.0000000000000001e+300");
    EXPECT_EQ(json_io::dump(Json(std::numeric_limits<double>::quiet_NaN()), true), "null");
    EXPECT_EQ(json_io::dump(Json(7), true), "7");
}

TEST(Dump, KeysSortedAndFlatArraysInline) {
    const Json j{{"b", Json::array({1, 2})}, {"a", true}};
    EXPECT_EQ(json_io::dump(j, true), R"({"a":true,"b":[1,2]})");
    EXPECT_EQ(json_io::dump(j, false), "{\n  \"a\": true,\n  \"b\": [1, 2]\n}");
}

TEST(Dump, EveryDoubleRoundTripsExactly) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double x = dist(rng) / 3.0;
        EXPECT_EQ(Json::parse(json_io::dump(Json(x), true)).get<double>(), x);
    }
}

TEST(Groups, BuiltinNames) {
    EXPECT_EQ(json_io::builtin_group("k4"), groups::klein_four());
    EXPECT_EQ(json_io::builtin_group("z2xz2"), groups::klein_four());
    EXPECT_EQ(json_io::builtin_group("z5").order(), 5u);
    EXPECT_EQ(json_io::builtin_group("q8"), groups::quaternion());
    EXPECT_EQ(json_io::builtin_group("z2xz4").order(), 8u);
    EXPECT_EQ(kind_of([] { json_io::builtin_group("a5"); }), ErrorKind::UnknownName);
}

TEST(Groups, RoundTripKeepsNames) {
    const auto g = groups::klein_four();
    const auto back = json_io::group_from_json(json_io::to_json(g));
    EXPECT_EQ(back, g);
    EXPECT_EQ(back.names(), g.names());
}

TEST(Groups, FixtureFileIsValidated) {
    EXPECT_EQ(json_io::load_group((kFixtures / "klein_four.json").string()), groups::klein_four());
    EXPECT_EQ(kind_of([] { json_io::load_group((kFixtures / "z2_broken.json").string()); }), ErrorKind::NotBijectiveRows);
}

TEST(Matrices, RoundTripIsBitExact) {
    std::mt19937_64 rng(5);
    const CMatrix m = numkernel::random_gaussian(3, 4, rng);
    EXPECT_TRUE(bit_equal(json_io::matrix_from_json(Json::parse(json_io::dump(json_io::to_json(m), true))), m));
}

TEST(Matrices, BareNumbersAreReal) {
    const CMatrix m = json_io::matrix_from_json(Json::parse("[[1, 2], [3, [0, 1]]]"));
    EXPECT_EQ(m(0, 1), cplx(2, 0));
    EXPECT_EQ(m(1, 1), cplx(0, 1));
}

TEST(Matrices, RaggedRowsAreRejected) {
    EXPECT_EQ(kind_of([] { json_io::matrix_from_json(Json::parse("[[1, 2], [3]]")); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { json_io::matrix_from_json(Json::parse("[[\"a\"]]")); }), ErrorKind::InvalidInput);
}

TEST(Matrices, IntegerMatrixKeepsBigEntries) {
    numkernel::IntMatrix m(1, 2);
    m(0, 0) = 5;
    m(0, 1) = numkernel::BigInt("123456789012345678901234567890");
    const Json j = json_io::to_json(m);
    EXPECT_EQ(j[0][0], 5);
    EXPECT_EQ(j[0][1], "123456789012345678901234567890");
    EXPECT_EQ(json_io::intmatrix_from_json(j), m);
}

TEST(Cocycles, ExactRoundTrip) {
    const auto c = cocycles::pauli();
    const auto back = json_io::cocycle_from_json(json_io::to_json(c));
    ASSERT_TRUE(back.is_exact());
    EXPECT_EQ(back.root_order(), c.root_order());
    EXPECT_EQ(back.exponents(), c.exponents());
}

TEST(Cocycles, FloatRoundTripIsBitExact) {
    const auto g = groups::cyclic(3);
    std::vector<std::vector<double>> t(3, std::vector<double>(3, 0.0));
    t[1][1] = 0.1;
    t[1][2] = 1.0 / 3.0;
    t[2][1] = 1.0 / 3.0;
    t[2][2] = 0.7;
    const auto c = Cocycle::from_turns(g, t);
    const auto back = json_io::cocycle_from_json(Json::parse(json_io::dump(json_io::to_json(c), true)));
    EXPECT_EQ(back.turns_table(), c.turns_table());
}

TEST(Cocycles, FixtureMatchesBuiltinPauli) {
    EXPECT_TRUE(same_values(json_io::load_cocycle(kFixtures / "pauli.json"), cocycles::pauli()));
}

TEST(Cocycles, WrongShapeIsRejected) {
    const Json j{{"group", "z2"}, {"m", 2}, {"exponents", Json::array({Json::array({0, 0})})}};
    EXPECT_EQ(kind_of([&] { json_io::cocycle_from_json(j); }), ErrorKind::InvalidInput);
}

TEST(PhaseFunctions, ExactAndFloat) {
    const auto b = json_io::load_phase_function(kFixtures / "b_z2_i.json");
    EXPECT_TRUE(b.is_exact());
    EXPECT_NEAR(std::abs(b.value(1) - cplx(0, 1)), 0.0, 1e-15);
    const Json j{{"group", "z2"}, {"phases", Json::array({0.0, 0.5})}};
    EXPECT_NEAR(std::abs(json_io::phase_function_from_json(j).value(1) + 1.0), 0.0, 1e-15);
}

TEST(Reps, OnsiteFixtureIsSpinOne) {
    const auto u = json_io::load_onsite(kFixtures / "spin1_k4.json");
    const auto ref = groups::spin1_pi_rotations();
    ASSERT_EQ(u.group, ref.group);
    for (Element g = 0; g < 4; ++g) EXPECT_LT(numkernel::frobenius_distance(u(g), ref(g)), 1e-14);
}

TEST(Reps, OnsiteFixtureRejectsScalar) {
    EXPECT_EQ(kind_of([] { json_io::load_onsite(kFixtures / "z2_minus_identity.json"); }), ErrorKind::ScalarAtNonIdentity);
}

TEST(Reps, ProjectiveRoundTrip) {
    const auto v = reps::pauli();
    const auto back = json_io::projrep_from_json(json_io::to_json(v));
    EXPECT_TRUE(same_values(back.cocycle, v.cocycle));
    for (Element g = 0; g < 4; ++g) EXPECT_TRUE(bit_equal(back(g), v(g)));
}

TEST(Reps, ProjectiveFixtureChecksItsCocycle) {
    EXPECT_EQ(json_io::load_projrep(kFixtures / "pauli_rep.json").dim, 2u);
    EXPECT_EQ(kind_of([] { json_io::load_projrep(kFixtures / "pauli_rep_untwisted.json"); }), ErrorKind::CocycleMismatch);
}

TEST(Mps, TensorsRoundTrip) {
    const auto s = builtin_state("aklt").state;
    const auto back = json_io::mps_tensors_from_json(json_io::to_json(s));
    ASSERT_EQ(back.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(bit_equal(back[i], s.tensors[i]));
}

TEST(Mps, WrongTensorCountIsRejected) {
    const Json j{{"phys_dim", 2}, {"bond_dim", 1}, {"tensors", Json::array({Json::array({Json::array({1})})})}};
    EXPECT_EQ(kind_of([&] { json_io::mps_tensors_from_json(j); }), ErrorKind::InvalidInput);
}

TEST(Covariant, FixturesLoad) {
    const auto reg = json_io::load_covariant(kFixtures / "covariant" / "k4_pauli_regular_1site.json");
    EXPECT_EQ(reg.carrier_dim(), 12u);
    const auto tensor = json_io::load_covariant(kFixtures / "covariant" / "k4_pauli_tensor_2site.json");
    EXPECT_EQ(tensor.carrier_dim(), 18u);
    const auto id = json_io::load_covariant(kFixtures / "covariant" / "z2_identity_2site.json");
    EXPECT_EQ(id.carrier_dim(), 4u);
}

TEST(Twisted, ElementRoundTrip) {
    const auto s = TwistedSystem::make(make_window({0}, 3), cocycles::pauli(), groups::spin1_pi_rotations());
    std::mt19937_64 rng(9);
    const auto f = TwistedElement::random(s, rng);
    const auto back = json_io::twisted_element_from_json(Json::parse(json_io::dump(json_io::to_json(f), true)), s);
    EXPECT_EQ(distance(back, f), 0.0);
}

TEST(Twisted, ElementFromOtherWindowIsRejected) {
    const auto s = TwistedSystem::make(make_window({0}, 3), cocycles::pauli(), groups::spin1_pi_rotations());
    const auto t = TwistedSystem::make(make_window({1}, 3), cocycles::pauli(), groups::spin1_pi_rotations());
    const Json j = json_io::to_json(TwistedElement::lambda(s, 1));
    EXPECT_EQ(kind_of([&] { json_io::twisted_element_from_json(j, t); }), ErrorKind::Mismatch);
}

TEST(Files, MissingAndMalformed) {
    EXPECT_EQ(kind_of([] { json_io::read_file(kFixtures / "does_not_exist.json"); }), ErrorKind::InvalidInput);
    const auto tmp = std::filesystem::temp_directory_path() / "cocycle_lab_malformed.json";
    {
        std::ofstream(tmp) << "{\"group\": ";
    }
    EXPECT_EQ(kind_of([&] { json_io::read_file(tmp); }), ErrorKind::InvalidInput);
    std::filesystem::remove(tmp);
}
