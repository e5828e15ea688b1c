#include <doctest.h>

#include <random>

#include "simpkit/markup.hh"

using namespace simpkit;

namespace {

AnnotatedText sa(std::vector<Segment> segments) {
  return {std::move(segments), AnnotatedSide::SimpleAnnotated};
}

Edit rep(std::string s, std::string t) {
  return {EditKind::Replace, std::move(s), std::move(t)};
}

MarkupErrc error_code(std::string_view text, AnnotatedSide side) {
  try {
    parse_annotated(text, side);
  } catch (const MarkupError &e) {
    return e.code();
  }
  FAIL("no error for: " << text);
  return MarkupErrc::UnknownTag;
}

}  // namespace

TEST_CASE("parse replacement in context") {
  auto a = parse_annotated(
      "cancer that <rep>emerges<by>starts</rep> from the tissue",
      AnnotatedSide::SimpleAnnotated);
  CHECK(a == sa({Plain{"cancer that "}, rep("emerges", "starts"),
                 Plain{" from the tissue"}}));
  CHECK(extract(a, TextSide::Expert) == "cancer that emerges from the tissue");
  CHECK(extract(a, TextSide::Simple) == "cancer that starts from the tissue");
}

TEST_CASE("parse elaboration at the start") {
  auto a = parse_annotated("<elab>Lewis<by>E.B. Lewis</elab> said",
                           AnnotatedSide::SimpleAnnotated);
  CHECK(a == sa({Edit{EditKind::Elaborate, "Lewis", "E.B. Lewis"},
                 Plain{" said"}}));
  CHECK(std::get<Edit>(a.segments[0]).elab == ElabType::Unclassified);
}

TEST_CASE("tag-free text is one plain segment") {
  auto a = parse_annotated("no tags at all", AnnotatedSide::SimpleAnnotated);
  CHECK(a == sa({Plain{"no tags at all"}}));
  CHECK(extract(a, TextSide::Expert) == "no tags at all");
  CHECK(extract(a, TextSide::Simple) == "no tags at all");
  CHECK(parse_annotated("", AnnotatedSide::SimpleAnnotated).segments.empty());
}

TEST_CASE("delete and insert wrap one side only") {
  auto a = parse_annotated("a <del>b</del> c <ins>d</ins>",
                           AnnotatedSide::SimpleAnnotated);
  CHECK(a == sa({Plain{"a "}, Edit{EditKind::Delete, "b", ""}, Plain{" c "},
                 Edit{EditKind::Insert, "", "d"}}));
  CHECK(extract(a, TextSide::Expert) == "a b c");
  CHECK(extract(a, TextSide::Simple) == "a c d");
}

TEST_CASE("serialize") {
  CHECK(serialize(sa({rep("involved", "affected")})) ==
        "<rep>involved<by>affected</rep>");
  CHECK(serialize(sa({Plain{"x"}})) == "x");
  const std::string text =
      "cancer that <rep>emerges<by>starts</rep> from the tissue";
  CHECK(serialize(parse_annotated(text, AnnotatedSide::SimpleAnnotated)) ==
        text);
}

TEST_CASE("literal angle brackets and ampersands") {
  AnnotatedText a = sa({Plain{"x <rep> & &lt; y"}});
  std::string s = serialize(a);
  CHECK(s == "x &lt;rep> & &amp;lt; y");
  CHECK(parse_annotated(s, AnnotatedSide::SimpleAnnotated) == a);
  // A bare '<' that does not look like a tag stays literal.
  CHECK(parse_annotated("1 < 2", AnnotatedSide::SimpleAnnotated) ==
        sa({Plain{"1 < 2"}}));
}

TEST_CASE("expert-side sentinels") {
  auto a = parse_annotated(
      "<elab>Allergic aspergillosis,<extra_id_0> <rep>a reaction<extra_id_1> "
      "occurs.",
      AnnotatedSide::ExpertAnnotated);
  REQUIRE(a.segments.size() == 4);
  CHECK(std::get<Edit>(a.segments[0]) ==
        Edit{EditKind::Elaborate, "Allergic aspergillosis,", ""});
  CHECK(std::get<Edit>(a.segments[2]) == Edit{EditKind::Replace, "a reaction", ""});
  CHECK(extract(a, TextSide::Expert) ==
        "Allergic aspergillosis, a reaction occurs.");
  CHECK(serialize(a) ==
        "<elab>Allergic aspergillosis,<extra_id_0> <rep>a reaction<extra_id_1> "
        "occurs.");
}

TEST_CASE("markup errors") {
  const auto S = AnnotatedSide::SimpleAnnotated;
  const auto E = AnnotatedSide::ExpertAnnotated;
  CHECK(error_code("<rep>a<by>b", S) == MarkupErrc::UnbalancedTag);
  CHECK(error_code("a</rep>", S) == MarkupErrc::UnbalancedTag);
  CHECK(error_code("<rep>a<by>b</elab>", S) == MarkupErrc::UnbalancedTag);
  CHECK(error_code("<rep>a<del>b</del></rep>", S) == MarkupErrc::NestedTag);
  CHECK(error_code("<rep>a</rep>", S) == MarkupErrc::MissingBy);
  CHECK(error_code("<elab>a</elab>", S) == MarkupErrc::MissingBy);
  CHECK(error_code("<bold>a</bold>", S) == MarkupErrc::UnknownTag);
  CHECK(error_code("a<by>b", S) == MarkupErrc::MisplacedBy);
  CHECK(error_code("<del>a<by>b</del>", S) == MarkupErrc::MisplacedBy);
  CHECK(error_code("<rep>a<by>b<by>c</rep>", S) == MarkupErrc::MisplacedBy);
  CHECK(error_code("<rep><by>b</rep>", S) == MarkupErrc::EmptySpan);
  CHECK(error_code("<ins></ins>", S) == MarkupErrc::EmptySpan);
  CHECK(error_code("<rep>a<extra_id_1>", S) == MarkupErrc::UnknownTag);
  CHECK(error_code("<rep>a<extra_id_0>", E) == MarkupErrc::UnbalancedTag);
}

TEST_CASE("error offsets point into the input") {
  try {
    parse_annotated("abc <rep>x</rep>", AnnotatedSide::SimpleAnnotated);
    FAIL("expected MissingBy");
  } catch (const MarkupError &e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("builder keeps normal form") {
  SegmentBuilder b;
  b.plain("a");
  b.separate();
  b.plain("b");
  b.separate();
  b.edit(rep("c", "d"));
  b.separate();
  b.edit(rep("e", "f"));
  b.separate();
  b.plain("");
  AnnotatedText a = std::move(b).finish(AnnotatedSide::SimpleAnnotated);
  CHECK(a == sa({Plain{"a b "}, rep("c", "d"), Plain{" "}, rep("e", "f")}));
  CHECK_NOTHROW(validate(a));
}

TEST_CASE("validate rejects broken segments") {
  CHECK_THROWS_AS(validate(sa({Plain{"a"}, Plain{"b"}})), MarkupError);
  CHECK_THROWS_AS(validate(sa({Plain{""}})), MarkupError);
  CHECK_THROWS_AS(validate(sa({Edit{EditKind::Delete, "a", "b"}})), MarkupError);
  CHECK_THROWS_AS(validate(sa({Edit{EditKind::Replace, "", "b"}})),
                  MarkupError);
}

TEST_CASE("round trip over random segments") {
  std::mt19937 rng(11);
  const std::vector<std::string> words = {"a", "tumor", "<", "&", "&lt;", ">",
                                          "x&amp;", "<by>", "é", "\t"};
  auto text = [&](size_t max_words) {
    std::string out;
    size_t n = 1 + rng() % max_words;
    for (size_t k = 0; k < n; ++k) {
      if (k) out += " ";
      out += words[rng() % words.size()];
    }
    return out;
  };
  for (int round = 0; round < 300; ++round) {
    auto side = rng() % 2 ? AnnotatedSide::SimpleAnnotated
                          : AnnotatedSide::ExpertAnnotated;
    AnnotatedText a{{}, side};
    bool last_plain = false;
    for (size_t k = 0, n = rng() % 6; k < n; ++k) {
      if (!last_plain && rng() % 2) {
        a.segments.push_back(Plain{text(3)});
        last_plain = true;
        continue;
      }
      auto kind = static_cast<EditKind>(rng() % 4);
      Edit e{kind, "", ""};
      if (kind != EditKind::Insert) e.source = text(3);
      if (kind != EditKind::Delete) e.target = text(3);
      if (side == AnnotatedSide::ExpertAnnotated &&
          (kind == EditKind::Replace || kind == EditKind::Elaborate) &&
          rng() % 2) {
        e.target.clear();
      }
      a.segments.push_back(e);
      last_plain = false;
    }
    REQUIRE_NOTHROW(validate(a));
    CHECK(parse_annotated(serialize(a), side) == a);
  }
}
