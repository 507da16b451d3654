#include <string>

#include "doctest.h"
#include "unifree/unifree.h"

TEST_CASE("analyze through the C API") {
  unifree_report* r = nullptr;
  REQUIRE(unifree_analyze(R"({"preset": "nu"})", nullptr, &r) == UNIFREE_OK);
  CHECK(unifree_report_passed(r) == 1);
  const std::string json = unifree_report_json(r, -1);
  CHECK(json.find("\"universal\":true") != std::string::npos);
  CHECK(std::string(unifree_report_text(r)).find("condition_W: all natural") != std::string::npos);
  unifree_report_free(r);
  CHECK(unifree_last_error_code() == UNIFREE_ERR_NONE);
}

TEST_CASE("input errors set the last error") {
  unifree_report* r = reinterpret_cast<unifree_report*>(0x1);
  CHECK(unifree_analyze("{ nope", nullptr, &r) == UNIFREE_INPUT_ERROR);
  CHECK(r == nullptr);
  CHECK(unifree_last_error_code() == UNIFREE_ERR_MALFORMED_INPUT);
  CHECK(std::string(unifree_last_error()).find("invalid JSON") != std::string::npos);
  CHECK(std::string(unifree_error_name(UNIFREE_ERR_MALFORMED_INPUT)) == "MalformedInput");

  CHECK(unifree_ellone_lift(R"([["1", "1"], ["0", "1"]])", R"([["1", "0"]])", 3, nullptr, &r) == UNIFREE_INPUT_ERROR);
  CHECK(unifree_last_error_code() == UNIFREE_ERR_NOT_NON_EXPANSIVE);
  CHECK(unifree_ellone_lift(R"([["1", "0"], ["0", "1"]])", R"([["1", "1"]])", 3, nullptr, &r) == UNIFREE_INPUT_ERROR);
  CHECK(unifree_last_error_code() == UNIFREE_ERR_NOT_IN_UNIT_BALL);

  CHECK(unifree_laws(nullptr, nullptr, nullptr, nullptr, &r) == UNIFREE_INPUT_ERROR);
  CHECK(unifree_last_error_code() == UNIFREE_ERR_USAGE);
  CHECK(unifree_analyze(R"({"preset": "nu"})", nullptr, nullptr) == UNIFREE_INPUT_ERROR);
}

TEST_CASE("failed checks still return a report") {
  unifree_report* r = nullptr;
  const char* w = R"({"components": ["loop"], "families": [{"template": "chain", "multiplicity": "omega"}]})";
  REQUIRE(unifree_lift(w, "[1, 0]", 4, nullptr, &r) == UNIFREE_CHECK_FAILED);
  CHECK(unifree_report_passed(r) == 0);
  unifree_report_free(r);
}

TEST_CASE("options reach the command") {
  unifree_options o{0, 1, 2};
  unifree_report* r = nullptr;
  REQUIRE(unifree_universal("ens", "\"z2\"", nullptr, &o, &r) == UNIFREE_OK);
  const std::string json = unifree_report_json(r, -1);
  CHECK(json.find("\"index_size\":2") != std::string::npos);
  unifree_report_free(r);
}

TEST_CASE("description handles") {
  unifree_description* d = nullptr;
  REQUIRE(unifree_description_parse(R"({"components": [{"kind": "z_chain"}]})", &d) == UNIFREE_OK);
  CHECK(unifree_description_listed_components(d) == 1);
  CHECK(unifree_description_is_universal(d) == 0);
  unifree_description_free(d);
  REQUIRE(unifree_description_parse(R"({"preset": "nu"})", &d) == UNIFREE_OK);
  CHECK(unifree_description_is_universal(d) == 1);
  unifree_description_free(d);
  CHECK(unifree_description_is_universal(nullptr) == -1);
  CHECK(unifree_description_parse(R"({"components": [{"kind": "spiral"}]})", &d) == UNIFREE_INPUT_ERROR);
  CHECK(d == nullptr);
  unifree_report_free(nullptr);
  unifree_description_free(nullptr);
}
