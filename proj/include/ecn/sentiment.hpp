#pragma once

#include <optional>
#include <string>

namespace ecn {

// Human-assigned stance of a comment toward its target.
enum class Sentiment { Supportive, Critical, Neutral };

std::string to_string(Sentiment sentiment);

// Accepts the three vocabulary words, case-insensitive; anything else
// (e.g. "positive") is rejected.
std::optional<Sentiment> sentiment_from_string(const std::string& text);

// Grading value: Supportive +2, Critical -2, Neutral 0.
int sentiment_value(Sentiment sentiment);

} // namespace ecn
