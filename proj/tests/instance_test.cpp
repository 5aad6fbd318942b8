#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "morbdd/errors.hpp"
#include "morbdd/instance.hpp"

using namespace morbdd;

namespace {

Instance small_fixture() {
  Instance inst;
  inst.num_objectives = 2;
  inst.num_items = 5;
  inst.weights = {3, 1, 6, 4, 5};
  inst.capacity = 10;  // ceil(19 / 2)
  inst.profits = {{1, 2, 3, 4, 5}, {5, 4, 3, 2, 1}};
  return inst;
}

}  // namespace

TEST_SUITE("instance") {

TEST_CASE("capacity rule matches the generator invariant") {
  const Instance inst = small_fixture();
  validate_instance(inst);
  CHECK(inst.capacity == (inst.total_weight() + 1) / 2);

  Instance single;
  single.num_objectives = 3;
  single.num_items = 1;
  single.weights = {1};
  single.capacity = 1;
  single.profits = {{7}, {8}, {9}};
  validate_instance(single);
  CHECK(single.capacity == 1);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance gen = generate_instance(2, 17, seed);
    CHECK(gen.capacity == (gen.total_weight() + 1) / 2);
  }
}

TEST_CASE("generated coefficients stay in [1, 1000]") {
  const Instance inst = generate_instance(3, 60, 123);
  for (std::int32_t w : inst.weights) {
    CHECK(w >= 1);
    CHECK(w <= 1000);
  }
  for (const auto& row : inst.profits)
    for (std::int32_t p : row) {
      CHECK(p >= 1);
      CHECK(p <= 1000);
    }
}

TEST_CASE("generation is a pure function of (K, N, seed)") {
  const Instance a = generate_instance(3, 25, 99);
  const Instance b = generate_instance(3, 25, 99);
  CHECK(a.weights == b.weights);
  CHECK(a.profits == b.profits);
  CHECK(a.capacity == b.capacity);
  std::ostringstream wa, wb;
  write_instance(a, wa);
  write_instance(b, wb);
  CHECK(wa.str() == wb.str());

  const Instance c = generate_instance(3, 25, 100);
  CHECK(a.weights != c.weights);
}

TEST_CASE("coefficient mean sits near the uniform expectation") {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = generate_instance(5, 100, 1000 + seed);
    for (std::int32_t w : inst.weights) {
      sum += w;
      ++count;
    }
    for (const auto& row : inst.profits)
      for (std::int32_t p : row) {
        sum += p;
        ++count;
      }
  }
  REQUIRE(count >= 10000);
  const double mean = sum / static_cast<double>(count);
  CHECK(mean >= 480.0);
  CHECK(mean <= 520.0);
}

TEST_CASE("serialization round-trips and is canonical") {
  const Instance inst = generate_instance(4, 12, 7);
  std::ostringstream first;
  write_instance(inst, first);
  std::istringstream in(first.str());
  const Instance back = read_instance(in, "roundtrip");
  CHECK(back.num_objectives == inst.num_objectives);
  CHECK(back.num_items == inst.num_items);
  CHECK(back.capacity == inst.capacity);
  CHECK(back.weights == inst.weights);
  CHECK(back.profits == inst.profits);
  CHECK(back.comments == inst.comments);

  std::ostringstream second;
  write_instance(back, second);
  CHECK(second.str() == first.str());
}

TEST_CASE("parse errors name the offending line") {
  std::istringstream missing_weight("2 3 5\n1 2\n1 2 3\n4 5 6\n");
  CHECK_THROWS_AS(read_instance(missing_weight, "bad"), ParseError);
  try {
    std::istringstream again("2 3 5\n1 2\n1 2 3\n4 5 6\n");
    read_instance(again, "bad");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  std::istringstream zero_profit("1 2 2\n1 1\n1 0\n");
  CHECK_THROWS_AS(read_instance(zero_profit, "bad"), ValidationError);
}

TEST_CASE("hash identifies the mathematical instance") {
  const Instance a = generate_instance(2, 9, 5);
  Instance b = a;
  CHECK(instance_hash(a) == instance_hash(b));

  b.comments.push_back("# extra note");
  CHECK(instance_hash(a) == instance_hash(b));

  b = a;
  b.profits[0][3] += 1;
  CHECK(instance_hash(a) != instance_hash(b));

  std::ostringstream out;
  write_instance(a, out);
  std::istringstream in(out.str());
  CHECK(instance_hash(read_instance(in, "h")) == instance_hash(a));
}

TEST_CASE("validation rejects malformed instances") {
  Instance inst = small_fixture();
  inst.weights[2] = 0;
  CHECK_THROWS_AS(validate_instance(inst), ValidationError);

  inst = small_fixture();
  inst.profits[1].pop_back();
  CHECK_THROWS_AS(validate_instance(inst), ValidationError);

  inst = small_fixture();
  inst.capacity = -1;
  CHECK_THROWS_AS(validate_instance(inst), ValidationError);
}

}  // TEST_SUITE
