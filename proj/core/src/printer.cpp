#include "rbx/printer.hpp"

#include <sstream>

namespace rbx {

namespace {

std::string exponent_factor(const std::string& var, std::int32_t e) {
    if (e == 1)
        return var;
    return var + "^" + std::to_string(e);
}

// Term body without coefficient or sign; empty for the unit key.
std::string key_body(const AlgebraDescriptor& alg, const BasisKey& key) {
    const bool laurent = alg.denominator_is_variable();
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < key.exponents.size(); ++i) {
        std::int32_t e = key.exponents[i];
        if (laurent && alg.has_denominator() && static_cast<int>(i) == alg.denom_var() &&
            key.denom_power > 0)
            e -= key.denom_power; // x^j / x^k with j < 1, printed as x^-k
        if (e == 0)
            continue;
        if (!first)
            os << "*";
        os << exponent_factor(alg.variables()[i], e);
        first = false;
    }
    std::string body = os.str();
    if (!laurent && key.denom_power > 0) {
        body += key.denom_power == 1 ? "/s" : "/s^" + std::to_string(key.denom_power);
    }
    return body;
}

struct TermText {
    Scalar coeff;
    std::string body;
};

std::string join_terms(const std::vector<TermText>& terms) {
    if (terms.empty())
        return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        if (i == 0) {
            if (t.coeff.sign() < 0)
                os << "-";
        } else {
            os << (t.coeff.sign() < 0 ? " - " : " + ");
        }
        const Scalar mag = t.coeff.abs();
        if (t.body.empty()) {
            os << mag.str();
        } else if (t.body.front() == '/') {
            // fraction with trivial numerator: print the coefficient always
            os << mag.str() << t.body;
        } else if (mag.is_one()) {
            os << t.body;
        } else {
            os << mag.str() << "*" << t.body;
        }
    }
    return os.str();
}

std::string word_body(const AlgebraDescriptor& alg, const TensorWord& w) {
    if (w.slots.size() == 1) {
        const std::string body = key_body(alg, w.slots.front());
        return body.empty() ? "1" : body;
    }
    std::ostringstream os;
    os << "T[";
    for (std::size_t i = 0; i < w.slots.size(); ++i) {
        if (i)
            os << ", ";
        os << key_text(alg, w.slots[i]);
    }
    os << "]";
    return os.str();
}

std::string word_terms_text(const AlgebraDescriptor& alg, const std::map<TensorWord, Scalar>& terms) {
    std::vector<TermText> out;
    out.reserve(terms.size());
    for (const auto& [w, c] : terms) {
        std::string body = word_body(alg, w);
        if (body == "1")
            body.clear(); // bare unit word prints as its coefficient
        out.push_back({c, std::move(body)});
    }
    return join_terms(out);
}

std::string json_escape(const std::string& s) {
    std::ostringstream os;
    for (char ch : s) {
        switch (ch) {
        case '"': os << "\\\""; break;
        case '\\': os << "\\\\"; break;
        default: os << ch;
        }
    }
    return os.str();
}

std::string json_terms(const std::vector<std::pair<std::vector<std::string>, Scalar>>& words) {
    std::ostringstream os;
    os << "{\"terms\":[";
    bool first = true;
    for (const auto& [slots, c] : words) {
        if (!first)
            os << ",";
        first = false;
        os << "{\"coeff\":\"" << json_escape(c.str()) << "\",\"word\":[";
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (i)
                os << ",";
            os << "\"" << json_escape(slots[i]) << "\"";
        }
        os << "]}";
    }
    os << "]}";
    return os.str();
}

std::string json_from_word_terms(const AlgebraDescriptor& alg, const std::map<TensorWord, Scalar>& terms) {
    std::vector<std::pair<std::vector<std::string>, Scalar>> rows;
    rows.reserve(terms.size());
    for (const auto& [w, c] : terms) {
        std::vector<std::string> slots;
        slots.reserve(w.slots.size());
        for (const auto& key : w.slots)
            slots.push_back(key_text(alg, key));
        rows.emplace_back(std::move(slots), c);
    }
    return json_terms(rows);
}

} // namespace

std::string key_text(const AlgebraDescriptor& alg, const BasisKey& key) {
    const std::string body = key_body(alg, key);
    if (body.empty())
        return "1";
    if (body.front() == '/')
        return "1" + body;
    return body;
}

std::string to_text(const AlgebraElement& a) {
    std::vector<TermText> out;
    out.reserve(a.terms().size());
    for (const auto& [key, c] : a.terms())
        out.push_back({c, key_body(a.descriptor(), key)});
    return join_terms(out);
}

std::string to_text(const ShuffleElement& u) {
    return word_terms_text(u.descriptor(), u.terms());
}

std::string to_text(const LocalizedElement& u) {
    return word_terms_text(u.context().algebra(), u.terms());
}

std::string to_json_text(const AlgebraElement& a) {
    std::vector<std::pair<std::vector<std::string>, Scalar>> rows;
    rows.reserve(a.terms().size());
    for (const auto& [key, c] : a.terms())
        rows.emplace_back(std::vector<std::string>{key_text(a.descriptor(), key)}, c);
    return json_terms(rows);
}

std::string to_json_text(const ShuffleElement& u) {
    return json_from_word_terms(u.descriptor(), u.terms());
}

std::string to_json_text(const LocalizedElement& u) {
    return json_from_word_terms(u.context().algebra(), u.terms());
}

} // namespace rbx
