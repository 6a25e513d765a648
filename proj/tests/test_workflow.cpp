#include <gtest/gtest.h>

#include <filesystem>

#include "oracles/random.hpp"
#include "wfv/encoder/scenario.hpp"
#include "wfv/workflow/format.hpp"
#include "wfv/workflow/validate.hpp"

using namespace wfv::workflow;

namespace {

const char* kChain = "start S; activity A; end E; trans t0: S->A; trans t1: A->E;";

WorkflowGraph config1() { return wfv::encoder::load_workflow(std::filesystem::path(WFV_DATA_DIR) / "case_study/config1.wf"); }

std::vector<std::string> labels(const std::vector<Edge>& es) {
  std::vector<std::string> out;
  for (const auto& e : es) out.push_back(e.label);
  return out;
}

}  // namespace

TEST(Parse, MinimalChain) {
  const auto g = parse_workflow(kChain);
  EXPECT_EQ(g.nodes().size(), 3u);
  EXPECT_EQ(g.edges().size(), 2u);
  EXPECT_EQ(g.node("A").kind, NodeKind::Activity);
  EXPECT_EQ(g.edge("t1").target, "E");
  EXPECT_TRUE(validate(g).ok());
  EXPECT_TRUE(g.outgoing("E").empty());
}

TEST(Parse, CaseStudyConfig1) {
  const auto g = config1();
  EXPECT_EQ(g.nodes().size(), 10u);
  EXPECT_EQ(g.nodes_of_kind(NodeKind::Conditional).size(), 1u);
  EXPECT_EQ(g.nodes_of_kind(NodeKind::SplitFork).size(), 1u);
  EXPECT_EQ(g.nodes_of_kind(NodeKind::SplitJoin).size(), 1u);
  EXPECT_EQ(labels(g.outgoing("Par_start")), (std::vector<std::string>{"t_1", "t_2"}));
  EXPECT_EQ(labels(g.incoming("end")), (std::vector<std::string>{"t_7", "t_8"}));
  EXPECT_EQ(g.accept(), (std::vector<std::string>{"Conf"}));
  EXPECT_TRUE(validate(g).ok());
  EXPECT_THROW(g.outgoing("nope"), UnknownNode);
}

TEST(Parse, ForwardReferencesAndComments) {
  const auto g = parse_workflow("# c\ntrans t0: S -> A; # trailing\nstart S; activity A; end E; trans t1: A -> E;\n");
  EXPECT_EQ(g.edges().size(), 2u);
}

TEST(Parse, Errors) {
  auto kind = [](const std::string& text) {
    try {
      parse_workflow(text);
    } catch (const ParseError& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  EXPECT_EQ(kind("start S; activity A; end E; trans t_1: S->A; trans t_1: A->E;"),
            static_cast<int>(ParseError::Kind::Duplicate));
  EXPECT_EQ(kind("start S; activity S;"), static_cast<int>(ParseError::Kind::Duplicate));
  EXPECT_EQ(kind("start S; end E; trans t: S->X;"), static_cast<int>(ParseError::Kind::Dangling));
  EXPECT_EQ(kind("start S activity A;"), static_cast<int>(ParseError::Kind::Syntax));
  EXPECT_EQ(kind("bogus S;"), static_cast<int>(ParseError::Kind::Syntax));
  EXPECT_EQ(kind("start 1S;"), static_cast<int>(ParseError::Kind::Syntax));
  try {
    parse_workflow("start S;\nactivity A\nend E;");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Validate, Violations) {
  auto g = parse_workflow("start S; activity A; activity B; end E; trans t0: S->A; trans t1: A->E; trans t2: S->B;");
  auto r = validate(g);
  ASSERT_TRUE(r.has(Rule::NoOutgoing));
  bool found = false;
  for (const auto& v : r.violations)
    if (v.rule == Rule::NoOutgoing) {
      EXPECT_EQ(v.element, "B");
      EXPECT_NE(v.message.find("out-degree 0 at non-End node"), std::string::npos);
      found = true;
    }
  EXPECT_TRUE(found);

  r = validate(parse_workflow(
      "start S; cond C; activity A; activity B; activity D; end E;"
      "trans t0: S->C; trans a: C->A; trans b: C->B; trans d: C->D; trans x: A->E; trans y: B->E; trans z: D->E;"));
  EXPECT_TRUE(r.has(Rule::ConditionalArity));

  r = validate(parse_workflow("activity A;"));
  EXPECT_TRUE(r.has(Rule::MissingStart));
  EXPECT_TRUE(r.has(Rule::MissingEnd));
  EXPECT_TRUE(r.has(Rule::NoIncoming));

  r = validate(parse_workflow("start S; start T; end E; trans a: S->E; trans b: T->E; trans c: E->S;"));
  EXPECT_TRUE(r.has(Rule::MultipleStart));
  EXPECT_TRUE(r.has(Rule::StartHasIncoming));
  EXPECT_TRUE(r.has(Rule::EndHasOutgoing));

  r = validate(parse_workflow("start S; fork F; activity A; join J; end E; trans a: S->F; trans b: F->A; trans c: A->J; trans d: J->E;"));
  EXPECT_TRUE(r.has(Rule::ForkArity));
  EXPECT_TRUE(r.has(Rule::JoinArity));

  g = parse_workflow(kChain);
  g.add_accept("Z");
  EXPECT_TRUE(validate(g).has(Rule::UnknownAccept));
}

TEST(Serialize, RoundTrip) {
  const auto g = config1();
  const std::string text = serialize_workflow(g);
  EXPECT_EQ(parse_workflow(text), g);
  EXPECT_EQ(serialize_workflow(parse_workflow(text)), text);
}

TEST(Generator, ProducesValidWorkflows) {
  oracle::Rng rng(1);
  for (int n = 0; n < 300; ++n) {
    const auto g = oracle::random_workflow(rng, "g", 6);
    const auto r = validate(g);
    ASSERT_TRUE(r.ok()) << serialize_workflow(g) << r.violations.front().message;
    ASSERT_LE(g.nodes_of_kind(NodeKind::Activity).size(), 6u);
    ASSERT_EQ(parse_workflow(serialize_workflow(g)), g);
  }
}
