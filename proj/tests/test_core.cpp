#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "uqseg/core.hpp"

using namespace uqseg;

namespace {

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no uqseg::Error thrown";
  return ErrorCode::IoError;
}

}  // namespace

TEST(ProbStack, AcceptsValuesInRange) {
  const auto s = validate_stack(2, 2, 1, {0.0f, 0.5f, 1.0f, 0.25f});
  EXPECT_EQ(s.width(), 2u);
  EXPECT_EQ(s.alpha(), 1u);
  EXPECT_FLOAT_EQ(s.at(0, 2), 1.0f);
}

TEST(ProbStack, RejectsValueAboveOne) {
  EXPECT_EQ(code_of([] { validate_stack(2, 2, 1, {0.0f, 0.5f, 1.2f, 0.25f}); }), ErrorCode::ValueOutOfRange);
}

TEST(ProbStack, RejectsNegativeAndNan) {
  EXPECT_EQ(code_of([] { validate_stack(1, 1, 1, {-0.01f}); }), ErrorCode::ValueOutOfRange);
  EXPECT_EQ(code_of([] { validate_stack(1, 1, 1, {std::numeric_limits<float>::quiet_NaN()}); }),
            ErrorCode::ValueOutOfRange);
}

TEST(ProbStack, RejectsWrongLength) {
  EXPECT_EQ(code_of([] { validate_stack(2, 2, 2, std::vector<float>(7, 0.5f)); }), ErrorCode::ShapeMismatch);
}

TEST(ProbStack, RejectsZeroDimension) {
  EXPECT_EQ(code_of([] { validate_stack(0, 2, 1, {}); }), ErrorCode::ShapeMismatch);
  EXPECT_EQ(code_of([] { validate_stack(2, 2, 0, {}); }), ErrorCode::ShapeMismatch);
}

TEST(ProbStack, PlanesAreIterationMajor) {
  const auto s = ProbStack::create(2, 1, 2, {0.1f, 0.2f, 0.3f, 0.4f});
  EXPECT_FLOAT_EQ(s.plane(1)[0], 0.3f);
  EXPECT_FLOAT_EQ(s.at(1, 1), 0.4f);
}

TEST(BinaryMask, ComplementFlipsBits) {
  const BinaryMask m({2, 2}, {0, 1, 1, 0});
  EXPECT_EQ(complement(m), BinaryMask({2, 2}, {1, 0, 0, 1}));
  EXPECT_EQ(complement(BinaryMask::zeros({3, 2})), BinaryMask::ones({3, 2}));
  EXPECT_EQ(complement(BinaryMask::ones({3, 2})), BinaryMask::zeros({3, 2}));
}

TEST(BinaryMask, ComplementIsAnInvolution) {
  const BinaryMask m({3, 3}, {1, 0, 1, 1, 1, 0, 0, 0, 1});
  EXPECT_EQ(complement(complement(m)), m);
  EXPECT_EQ(m.count() + complement(m).count(), 9u);
}

TEST(BinaryMask, RejectsNonBinary) {
  EXPECT_EQ(code_of([] { BinaryMask({1, 2}, {0, 2}); }), ErrorCode::ValueOutOfRange);
  EXPECT_EQ(code_of([] { BinaryMask({2, 2}, {0, 1}); }), ErrorCode::ShapeMismatch);
}

TEST(UncertaintyMap, RejectsOutOfRange) {
  EXPECT_EQ(code_of([] { UncertaintyMap({1, 1}, {1.5}); }), ErrorCode::ValueOutOfRange);
  EXPECT_NO_THROW(UncertaintyMap({1, 2}, {0.0, 1.0}));
}

TEST(Shapes, MismatchIsReported) {
  EXPECT_EQ(code_of([] { require_same_shape({2, 2}, {2, 3}, "test"); }), ErrorCode::ShapeMismatch);
  EXPECT_NO_THROW(require_same_shape({2, 3}, {2, 3}, "test"));
}

TEST(ClassLabel, RoundTripsAndDummies) {
  for (auto c : kAllClasses) {
    EXPECT_EQ(parse_class(to_string(c)), c);
    const auto d = dummies(c);
    EXPECT_DOUBLE_EQ(d.c1 + d.c2 + d.c3, 1.0);
  }
  EXPECT_EQ(dummies(ClassLabel::Nevus).c2, 1.0);
  EXPECT_FALSE(parse_class("basal_cell"));
}

TEST(ErrorCodes, MapToCliExitCodes) {
  EXPECT_EQ(exit_code_for(ErrorCode::InvalidConfig), 2);
  EXPECT_EQ(exit_code_for(ErrorCode::IoError), 3);
  EXPECT_EQ(exit_code_for(ErrorCode::MissingUpstream), 3);
  EXPECT_EQ(exit_code_for(ErrorCode::BadMagic), 4);
  EXPECT_EQ(exit_code_for(ErrorCode::DuplicateId), 4);
  EXPECT_EQ(exit_code_for(ErrorCode::InsufficientData), 5);
  EXPECT_EQ(exit_code_for(ErrorCode::ConstantInput), 5);
}
