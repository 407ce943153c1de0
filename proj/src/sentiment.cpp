#include "ecn/sentiment.hpp"

#include <algorithm>
#include <cctype>

namespace ecn {

std::string to_string(Sentiment sentiment) {
    switch (sentiment) {
    case Sentiment::Supportive: return "supportive";
    case Sentiment::Critical: return "critical";
    case Sentiment::Neutral: return "neutral";
    }
    return "neutral";
}

std::optional<Sentiment> sentiment_from_string(const std::string& text) {
    std::string low;
    low.reserve(text.size());
    for (char c : text) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (low == "supportive") return Sentiment::Supportive;
    if (low == "critical") return Sentiment::Critical;
    if (low == "neutral") return Sentiment::Neutral;
    return std::nullopt;
}

int sentiment_value(Sentiment sentiment) {
    switch (sentiment) {
    case Sentiment::Supportive: return 2;
    case Sentiment::Critical: return -2;
    case Sentiment::Neutral: return 0;
    }
    return 0;
}

} // namespace ecn
