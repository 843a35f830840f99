#pragma once

#include <cctype>
#include <stdexcept>
#include <string>

namespace truecon::detail {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Character cursor shared by the term and formula parsers.
class Cursor {
public:
    explicit Cursor(const std::string& text) : s_(text) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) pos_++;
    }

    bool eof() {
        skip_ws();
        return pos_ >= s_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool try_consume(const std::string& tok) {
        skip_ws();
        if (s_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    // Like try_consume but refuses when the token continues as an identifier.
    bool try_keyword(const std::string& tok) {
        skip_ws();
        if (s_.compare(pos_, tok.size(), tok) != 0) return false;
        std::size_t end = pos_ + tok.size();
        if (end < s_.size()) {
            char c = s_[end];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return false;
        }
        pos_ = end;
        return true;
    }

    void expect(const std::string& tok) {
        if (!try_consume(tok)) fail("expected '" + tok + "'");
    }

    std::string ident() {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] < 'a' || s_[pos_] > 'z')
            fail("expected identifier");
        std::size_t start = pos_++;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                pos_++;
            else
                break;
        }
        return s_.substr(start, pos_ - start);
    }

    int natural() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected number");
        int v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            v = v * 10 + (s_[pos_++] - '0');
        return v;
    }

    std::size_t pos() const { return pos_; }
    void seek(std::size_t p) { pos_ = p; }

    void expect_eof() {
        if (!eof()) fail("trailing input");
    }

    [[noreturn]] void fail(const std::string& msg) {
        int line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < s_.size(); i++) {
            if (s_[i] == '\n') {
                line++;
                col = 1;
            } else {
                col++;
            }
        }
        throw ParseError("line " + std::to_string(line) + " col " + std::to_string(col) +
                         ": " + msg);
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace truecon::detail
