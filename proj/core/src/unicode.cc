/*
 * Copyright 2026 The vandalstack Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "vandalstack/unicode.h"

namespace vandalstack::unicode {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

bool in(char32_t c, char32_t lo, char32_t hi) { return c >= lo && c <= hi; }

CharClass letter(bool upper, bool lower, bool latin) {
  CharClass cc;
  cc.letter = true;
  cc.upper = upper;
  cc.lower = lower;
  cc.latin = latin;
  return cc;
}

CharClass uncased_letter() { return letter(false, false, false); }

CharClass punctuation() {
  CharClass cc;
  cc.punctuation = true;
  return cc;
}

CharClass digit() {
  CharClass cc;
  cc.digit = true;
  return cc;
}

CharClass whitespace() {
  CharClass cc;
  cc.whitespace = true;
  return cc;
}

// Latin Extended-A alternates upper/lower with the parity flipping twice.
bool latin_ext_a_upper(char32_t c) {
  if (c == 0x0138 || c == 0x0149 || c == 0x017F) return false;
  if (c == 0x0178) return true;
  if (in(c, 0x0139, 0x0148) || in(c, 0x0179, 0x017E)) return (c & 1) == 1;
  return (c & 1) == 0;
}

}  // namespace

std::vector<char32_t> decode_utf8(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const unsigned char*>(text.data());
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    const unsigned char b0 = s[i];
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2; cp = b0 & 0x1F; min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3; cp = b0 & 0x0F; min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4; cp = b0 & 0x07; min = 0x10000;
    }
    bool ok = len > 0 && i + len <= n;
    for (std::size_t k = 1; ok && k < len; ++k) {
      if ((s[i + k] & 0xC0) != 0x80) {
        ok = false;
      } else {
        cp = (cp << 6) | (s[i + k] & 0x3F);
      }
    }
    ok = ok && cp >= min && cp <= 0x10FFFF && !in(cp, 0xD800, 0xDFFF);
    if (ok) {
      out.push_back(cp);
      i += len;
    } else {
      out.push_back(kReplacement);
      ++i;
    }
  }
  return out;
}

void append_utf8(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

CharClass classify(char32_t c) {
  // Basic Latin.
  if (c < 0x80) {
    if (in(c, 'A', 'Z')) return letter(true, false, true);
    if (in(c, 'a', 'z')) return letter(false, true, true);
    if (in(c, '0', '9')) return digit();
    if (c == ' ' || in(c, 0x09, 0x0D)) return whitespace();
    if (in(c, 0x21, 0x2F) || in(c, 0x3A, 0x40) || in(c, 0x5B, 0x60) ||
        in(c, 0x7B, 0x7E)) {
      return punctuation();
    }
    return {};
  }
  if (c == 0x85 || c == 0xA0 || c == 0x1680 || in(c, 0x2000, 0x200A) ||
      c == 0x2028 || c == 0x2029 || c == 0x202F || c == 0x205F || c == 0x3000) {
    return whitespace();
  }
  // Latin-1 Supplement.
  if (in(c, 0xA1, 0xBF)) {
    if (c == 0xAA || c == 0xB5 || c == 0xBA) return letter(false, true, c != 0xB5);
    if (c == 0xB2 || c == 0xB3 || c == 0xB9 || in(c, 0xBC, 0xBE)) return {};
    return punctuation();
  }
  if (c == 0xD7 || c == 0xF7) return punctuation();
  if (in(c, 0xC0, 0xDE)) return letter(true, false, true);
  if (in(c, 0xDF, 0xFF)) return letter(false, true, true);
  // Latin Extended-A.
  if (in(c, 0x0100, 0x017F)) {
    const bool upper = latin_ext_a_upper(c);
    return letter(upper, !upper, true);
  }
  // Latin Extended-B: letters whose case is not tabulated.
  if (in(c, 0x0180, 0x024F)) return letter(false, false, true);
  // IPA extensions.
  if (in(c, 0x0250, 0x02AF)) return letter(false, true, true);
  // Greek.
  if (in(c, 0x0370, 0x03FF)) {
    if (in(c, 0x0391, 0x03A9) || c == 0x0386 || in(c, 0x0388, 0x038F)) {
      return letter(true, false, false);
    }
    if (in(c, 0x03AC, 0x03CE) || c == 0x0390) return letter(false, true, false);
    if (c == 0x037E || c == 0x0387) return punctuation();
    return uncased_letter();
  }
  // Cyrillic.
  if (in(c, 0x0400, 0x04FF)) {
    if (in(c, 0x0400, 0x042F)) return letter(true, false, false);
    if (in(c, 0x0430, 0x045F)) return letter(false, true, false);
    if (in(c, 0x0482, 0x0489)) return punctuation();
    const bool upper = (c & 1) == 0;
    return letter(upper, !upper, false);
  }
  // Armenian, Hebrew, Arabic, Syriac, Thaana.
  if (in(c, 0x0531, 0x0556)) return letter(true, false, false);
  if (in(c, 0x0561, 0x0587)) return letter(false, true, false);
  if (in(c, 0x0589, 0x058A) || in(c, 0x05BE, 0x05BE) || in(c, 0x05C0, 0x05C0) ||
      in(c, 0x05C3, 0x05C3) || in(c, 0x05F3, 0x05F4) || in(c, 0x060C, 0x060D) ||
      c == 0x061B || c == 0x061F || in(c, 0x066A, 0x066D) || c == 0x06D4) {
    return punctuation();
  }
  if (in(c, 0x0660, 0x0669) || in(c, 0x06F0, 0x06F9)) return digit();
  if (in(c, 0x05D0, 0x05EA) || in(c, 0x0620, 0x064A) || in(c, 0x0671, 0x06D3) ||
      in(c, 0x0710, 0x074F) || in(c, 0x0780, 0x07A5)) {
    return uncased_letter();
  }
  // Indic scripts (Devanagari .. Malayalam): digits at offset 0x66..0x6F.
  if (in(c, 0x0900, 0x0D7F)) {
    const char32_t offset = c & 0x7F;
    if (in(offset, 0x66, 0x6F)) return digit();
    if (c == 0x0964 || c == 0x0965) return punctuation();
    return uncased_letter();
  }
  // Thai, Lao.
  if (in(c, 0x0E50, 0x0E59) || in(c, 0x0ED0, 0x0ED9)) return digit();
  if (in(c, 0x0E00, 0x0EFF)) return uncased_letter();
  // Georgian, Hangul Jamo, Ethiopic.
  if (in(c, 0x10A0, 0x10C5)) return letter(true, false, false);
  if (in(c, 0x10D0, 0x10FA)) return uncased_letter();
  if (in(c, 0x1100, 0x11FF) || in(c, 0x1200, 0x137F)) return uncased_letter();
  // Latin Extended Additional.
  if (in(c, 0x1E00, 0x1EFF)) {
    if (in(c, 0x1E96, 0x1E9F)) return letter(false, true, true);
    const bool upper = (c & 1) == 0;
    return letter(upper, !upper, true);
  }
  // Greek Extended.
  if (in(c, 0x1F00, 0x1FFF)) return uncased_letter();
  // General punctuation, currency, letterlike, arrows, math, box drawing,
  // misc symbols and dingbats.
  if (in(c, 0x2010, 0x2027) || in(c, 0x2030, 0x205E) || in(c, 0x20A0, 0x20CF) ||
      in(c, 0x2100, 0x214F) || in(c, 0x2190, 0x23FF) || in(c, 0x2500, 0x27BF) ||
      in(c, 0x2E00, 0x2E7F)) {
    return punctuation();
  }
  // CJK symbols and punctuation.
  if (in(c, 0x3001, 0x303F)) return punctuation();
  // Kana, CJK ideographs, Hangul syllables.
  if (in(c, 0x3040, 0x30FF) || in(c, 0x3400, 0x4DBF) || in(c, 0x4E00, 0x9FFF) ||
      in(c, 0xAC00, 0xD7AF) || in(c, 0xF900, 0xFAFF) || in(c, 0x20000, 0x2FA1F)) {
    return uncased_letter();
  }
  // Fullwidth forms.
  if (in(c, 0xFF10, 0xFF19)) return digit();
  if (in(c, 0xFF21, 0xFF3A)) return letter(true, false, true);
  if (in(c, 0xFF41, 0xFF5A)) return letter(false, true, true);
  if (in(c, 0xFF01, 0xFF0F) || in(c, 0xFF1A, 0xFF20) || in(c, 0xFF3B, 0xFF40) ||
      in(c, 0xFF5B, 0xFF65)) {
    return punctuation();
  }
  return {};
}

char32_t to_lower(char32_t c) {
  if (in(c, 'A', 'Z')) return c + 32;
  if (c < 0x80) return c;
  if (in(c, 0xC0, 0xDE) && c != 0xD7) return c + 32;
  if (in(c, 0x0100, 0x017F) || in(c, 0x1E00, 0x1E95)) {
    const CharClass cc = classify(c);
    if (!cc.upper) return c;
    if (c == 0x0178) return 0xFF;
    return c + 1;
  }
  if (in(c, 0x0391, 0x03A9) && c != 0x03A2) return c + 32;
  if (in(c, 0x0410, 0x042F)) return c + 32;
  if (in(c, 0x0400, 0x040F)) return c + 80;
  if (in(c, 0x0460, 0x04FF) && (c & 1) == 0 && !in(c, 0x0482, 0x0489)) return c + 1;
  if (in(c, 0x0531, 0x0556)) return c + 48;
  if (in(c, 0xFF21, 0xFF3A)) return c + 32;
  return c;
}

std::string lower_utf8(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : decode_utf8(text)) append_utf8(out, to_lower(c));
  return out;
}

}  // namespace vandalstack::unicode
