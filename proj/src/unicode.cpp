#include "orthosim/unicode.hpp"

#include <unicode/uchar.h>
#include <unicode/ucnv.h>
#include <unicode/ustring.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cctype>
#include <limits>
#include <memory>
#include <vector>

#include "orthosim/error.hpp"

namespace orthosim::unicode {
namespace {

bool is_utf8_name(std::string_view encoding) {
  std::string lowered;
  for (char c : encoding) {
    if (c != '-' && c != '_') lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return lowered == "utf8";
}

constexpr std::string_view kUtf8Bom = "\xEF\xBB\xBF";

struct ConverterCloser {
  void operator()(UConverter* c) const { ucnv_close(c); }
};

}  // namespace

void validate_utf8(std::string_view bytes, const std::string& source) {
  if (bytes.size() > static_cast<std::size_t>(std::numeric_limits<int32_t>::max())) {
    throw IoError("input too large: " + source);
  }
  const auto* s = reinterpret_cast<const uint8_t*>(bytes.data());
  const auto length = static_cast<int32_t>(bytes.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) throw DecodeError(source, static_cast<std::size_t>(start));
  }
}

std::string to_utf8(std::string_view bytes, std::string_view encoding,
                    const std::string& source) {
  if (encoding.empty() || is_utf8_name(encoding)) {
    std::size_t skip = bytes.starts_with(kUtf8Bom) ? kUtf8Bom.size() : 0;
    validate_utf8(bytes.substr(skip), source);
    return std::string(bytes.substr(skip));
  }

  UErrorCode status = U_ZERO_ERROR;
  std::unique_ptr<UConverter, ConverterCloser> conv(
      ucnv_open(std::string(encoding).c_str(), &status));
  if (U_FAILURE(status)) {
    throw IoError("unknown encoding \"" + std::string(encoding) + "\" for " + source);
  }
  ucnv_setToUCallBack(conv.get(), UCNV_TO_U_CALLBACK_STOP, nullptr, nullptr,
                      nullptr, &status);

  std::vector<UChar> utf16(bytes.size() * 2 + 16);
  UChar* target = utf16.data();
  const char* src = bytes.data();
  ucnv_toUnicode(conv.get(), &target, utf16.data() + utf16.size(), &src,
                 bytes.data() + bytes.size(), nullptr, true, &status);
  if (U_FAILURE(status)) {
    char invalid[32];
    int8_t invalid_len = sizeof(invalid);
    UErrorCode ignore = U_ZERO_ERROR;
    ucnv_getInvalidChars(conv.get(), invalid, &invalid_len, &ignore);
    const auto consumed = static_cast<std::size_t>(src - bytes.data());
    throw DecodeError(source, consumed - std::min<std::size_t>(consumed, invalid_len));
  }
  const auto units = static_cast<int32_t>(target - utf16.data());
  std::size_t begin = (units > 0 && utf16[0] == 0xFEFF) ? 1 : 0;

  int32_t needed = 0;
  status = U_ZERO_ERROR;
  u_strToUTF8(nullptr, 0, &needed, utf16.data() + begin, units - static_cast<int32_t>(begin), &status);
  std::string out(static_cast<std::size_t>(needed), '\0');
  status = U_ZERO_ERROR;
  u_strToUTF8(out.data(), needed, &needed, utf16.data() + begin,
              units - static_cast<int32_t>(begin), &status);
  if (U_FAILURE(status)) throw DecodeError(source, 0);
  return out;
}

char32_t next(std::string_view utf8, std::size_t& pos) {
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  auto i = static_cast<int32_t>(pos);
  UChar32 c;
  U8_NEXT(s, i, static_cast<int32_t>(utf8.size()), c);
  pos = static_cast<std::size_t>(i);
  return c < 0 ? U'\uFFFD' : static_cast<char32_t>(c);
}

void append(std::string& out, char32_t cp) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
  if (error) return;
  out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(len));
}

std::string encode(char32_t cp) {
  std::string s;
  append(s, cp);
  return s;
}

std::size_t scalar_count(std::string_view utf8) {
  // Count bytes that are not UTF-8 continuation bytes.
  return static_cast<std::size_t>(std::count_if(utf8.begin(), utf8.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

bool is_whitespace(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)); }

bool is_punctuation(char32_t cp) { return u_ispunct(static_cast<UChar32>(cp)); }

bool is_decimal_digit(char32_t cp) {
  return u_charType(static_cast<UChar32>(cp)) == U_DECIMAL_DIGIT_NUMBER;
}

char32_t to_lower(char32_t cp) {
  return static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp)));
}

std::string to_lower(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  for (std::size_t pos = 0; pos < utf8.size();) append(out, to_lower(next(utf8, pos)));
  return out;
}

}  // namespace orthosim::unicode
