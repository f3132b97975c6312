#include "qcolloid/runconfig.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "qcolloid/errors.hpp"

namespace qcolloid {
namespace {

RunConfig parse_text(const std::string& text) {
  std::istringstream in(text);
  return RunConfig::parse(in);
}

std::string throw_message(const std::string& text) {
  try {
    parse_text(text);
  } catch (const InputError& e) {
    return e.what();
  }
  ADD_FAILURE() << "expected InputError for:\n" << text;
  return "";
}

TEST(RunConfigParse, SectionsEntriesAndLookups) {
  RunConfig cfg = parse_text(
      "# header comment\n"
      "\n"
      "[energy]\n"
      "shape = torus\n"
      "R = 2\n"
      "n = 0,0,1\n"
      "\n"
      "[scan]\n"
      "grid = n1:-0.99:0.99:48\n");
  ASSERT_EQ(cfg.sections.size(), 2u);
  const ConfigSection* energy = cfg.find("energy");
  ASSERT_NE(energy, nullptr);
  EXPECT_EQ(energy->line, 3);
  EXPECT_EQ(energy->get("shape"), "torus");
  EXPECT_EQ(energy->get_or("missing", "fallback"), "fallback");
  EXPECT_EQ(energy->find("R")->line, 5);
  EXPECT_EQ(cfg.find("nope"), nullptr);

  const ConfigSection* scan = cfg.find("scan");
  ASSERT_NE(scan, nullptr);
  EXPECT_EQ(scan->get("grid"), "n1:-0.99:0.99:48");

  EXPECT_THROW(energy->get("absent"), InputError);
}

TEST(RunConfigParse, ValuesMayContainSpacesAndEquals) {
  RunConfig cfg = parse_text("[optimize]\nnote = a = b with spaces\n");
  EXPECT_EQ(cfg.find("optimize")->get("note"), "a = b with spaces");
}

TEST(RunConfigParse, ErrorsCarryLineNumbers) {
  EXPECT_NE(throw_message("[a]\nx = 1\n[a]\ny = 2\n").find("3"),
            std::string::npos);
  EXPECT_NE(throw_message("[a]\nx = 1\nx = 2\n").find("3"),
            std::string::npos);
  EXPECT_NE(throw_message("x = 1\n[a]\n").find("1"), std::string::npos);
  EXPECT_NE(throw_message("[a\nx = 1\n").find("1"), std::string::npos);
  EXPECT_NE(throw_message("[a]\n= 1\n").find("2"), std::string::npos);
  EXPECT_NE(throw_message("[a]\njust words\n").find("2"), std::string::npos);
}

TEST(RunConfigEmit, RoundTripIsStable) {
  RunConfig cfg = parse_text(
      "[energy]\n"
      "shape = torus\n"
      "R = 2\n"
      "\n"
      "[figures]\n"
      "id = capsule\n");
  std::string once = cfg.emit();
  std::istringstream in(once);
  std::string twice = RunConfig::parse(in).emit();
  EXPECT_EQ(once, twice);
  EXPECT_NE(once.find("[energy]"), std::string::npos);
  EXPECT_NE(once.find("shape = torus"), std::string::npos);
}

TEST(RequireKeys, NamesTheOffendingLineAndSection) {
  RunConfig cfg = parse_text("[energy]\nshape = torus\nbogus = 1\n");
  const ConfigSection* sec = cfg.find("energy");
  ASSERT_NE(sec, nullptr);
  EXPECT_NO_THROW(require_keys(*sec, {"shape", "bogus"}));
  try {
    require_keys(*sec, {"shape"});
    ADD_FAILURE() << "unknown key was accepted";
  } catch (const InputError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("bogus"), std::string::npos) << msg;
    EXPECT_NE(msg.find("energy"), std::string::npos) << msg;
  }
}

TEST(RunConfigFile, MissingPathThrows) {
  EXPECT_THROW(RunConfig::parse_file("/nonexistent/qc.conf"), InputError);
}

}  // namespace
}  // namespace qcolloid
