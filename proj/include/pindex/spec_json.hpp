#pragma once

// JSON form of index sets:
//   {"type": "everything"}
//   {"type": "kfree", "k": 2}
//   {"type": "klfree", "k": 2, "primes": {"3": 4}}
//   {"type": "multiples", "n": 6}
//   {"type": "coprime", "m": 6}
//   {"type": "gcd_equals", "m": 2, "t": 1}
//   {"type": "single_prime", "prime": 3, "valuations": [[0, 1]]}
//   {"type": "custom", "q0": 2, "boxes": [{"2": [[1, 1]]}],
//    "default": [[0, null]], "exceptions": {"3": [[0, 2]]}}
// Intervals are [lo, hi] with hi = null for an unbounded interval.

#include <json.hpp>

#include <string>

#include "pindex/index_sets.hpp"

namespace pindex {

using ojson = nlohmann::ordered_json;

struct SetDescription {
    std::string type;
    ojson json;  // canonical form of the input, same type
    IndexSetSpec spec;
};

/// Validates and builds the set; errors carry a JSON pointer rooted at `where`.
SetDescription parse_set(const ojson& j, const std::string& where = "");

/// The set in the generic "custom" form.
ojson set_to_json(const IndexSetSpec& spec);
ojson vset_to_json(const ValuationSet& v);

namespace json_util {

[[noreturn]] void error_at(const std::string& pointer, const std::string& message);
void require_object(const ojson& j, const std::string& pointer);
/// Rejects keys outside `allowed`.
void check_keys(const ojson& j, const std::string& pointer, std::initializer_list<const char*> allowed);
u64 get_u64(const ojson& j, const std::string& pointer);
const ojson& member(const ojson& j, const char* key, const std::string& pointer);
std::string escape_pointer(const std::string& key);

}  // namespace json_util

}  // namespace pindex
