#include "fakenews/unicode.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "fakenews/error.hpp"

namespace fakenews::unicode {

std::string normalize_nfc(std::string_view utf8) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) {
        throw Error(Errc::Io, "unicode", u_errorName(status));
    }
    const auto source = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
    if (nfc->isNormalized(source, status) && U_SUCCESS(status)) {
        std::string out;
        source.toUTF8String(out);
        return out;
    }
    status = U_ZERO_ERROR;
    const icu::UnicodeString normalized = nfc->normalize(source, status);
    if (U_FAILURE(status)) {
        throw Error(Errc::Io, "unicode", u_errorName(status));
    }
    std::string out;
    normalized.toUTF8String(out);
    return out;
}

char32_t next_codepoint(std::string_view utf8, std::size_t& pos) noexcept {
    const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
    int32_t i = static_cast<int32_t>(pos);
    const auto length = static_cast<int32_t>(utf8.size());
    UChar32 cp = 0;
    U8_NEXT(bytes, i, length, cp);
    pos = static_cast<std::size_t>(i);
    return cp < 0 ? U'\uFFFD' : static_cast<char32_t>(cp);
}

bool is_emoji_part(char32_t cp) noexcept {
    const auto c = static_cast<UChar32>(cp);
    if (c == 0x200D || c == 0xFE0E || c == 0xFE0F || c == 0x20E3) {
        return true;
    }
    if (c >= 0xE0020 && c <= 0xE007F) {
        return true;
    }
    return u_hasBinaryProperty(c, UCHAR_EXTENDED_PICTOGRAPHIC) || u_hasBinaryProperty(c, UCHAR_EMOJI_PRESENTATION) ||
           u_hasBinaryProperty(c, UCHAR_EMOJI_MODIFIER) || u_hasBinaryProperty(c, UCHAR_REGIONAL_INDICATOR);
}

bool is_word_char(char32_t cp) noexcept {
    const auto c = static_cast<UChar32>(cp);
    if (c == '_') {
        return true;
    }
    if (u_isalnum(c)) {
        return true;
    }
    const int8_t type = u_charType(c);
    return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK || type == U_ENCLOSING_MARK;
}

std::string to_lower(std::string_view utf8) {
    bool ascii = true;
    for (unsigned char c : utf8) {
        if (c >= 0x80) {
            ascii = false;
            break;
        }
    }
    std::string out;
    if (ascii) {
        out.reserve(utf8.size());
        for (unsigned char c : utf8) {
            out.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c));
        }
        return out;
    }
    auto text = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
    text.toLower(icu::Locale::getRoot());
    text.toUTF8String(out);
    return out;
}

}  // namespace fakenews::unicode
