#include "apery/words.hpp"

#include <stdexcept>

namespace apery {

std::string XLetter::to_string() const {
  if (is_a) return "x[0]";
  // render roots of unity as mu powers when possible
  for (int e = 0; e < 8; ++e) {
    if (pole == CycloQ8::mu_pow(e)) {
      switch (e) {
        case 0: return "x[1]";
        case 2: return "x[i]";
        case 4: return "x[-1]";
        case 6: return "x[-i]";
        case 1: return "x[mu]";
        default: return "x[mu^" + std::to_string(e) + "]";
      }
    }
  }
  return "x[" + pole.to_string() + "]";
}

std::string xword_to_string(const XWord& w) {
  if (w.empty()) return "(empty)";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += " ";
    out += w[i].to_string();
  }
  return out;
}

std::string omword_to_string(const OmWord& w) {
  if (w.empty()) return "(empty)";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += " ";
    std::string f = w[i].form.to_string();
    if (w[i].plain()) {
      out += f;
    } else {
      out += "(" + f + " + " + w[i].constant.to_string() + ")";
    }
  }
  return out;
}

template <typename W>
static void shuffle_rec(const W& w1, std::size_t i, const W& w2, std::size_t j, W& cur,
                        LinComb<W>& out) {
  if (i == w1.size() && j == w2.size()) {
    out.add(cur, CycloQ8(1));
    return;
  }
  if (i < w1.size()) {
    cur.push_back(w1[i]);
    shuffle_rec(w1, i + 1, w2, j, cur, out);
    cur.pop_back();
  }
  if (j < w2.size()) {
    cur.push_back(w2[j]);
    shuffle_rec(w1, i, w2, j + 1, cur, out);
    cur.pop_back();
  }
}

template <typename W>
LinComb<W> shuffle(const W& w1, const W& w2) {
  LinComb<W> out;
  W cur;
  cur.reserve(w1.size() + w2.size());
  shuffle_rec(w1, 0, w2, 0, cur, out);
  return out;
}

template LinComb<OmWord> shuffle(const OmWord&, const OmWord&);
template LinComb<XWord> shuffle(const XWord&, const XWord&);

OmLin expand_mixed(const OmWord& w) {
  if (!w.empty() && !w.back().plain()) {
    throw std::invalid_argument("expand_mixed: last letter carries a constant");
  }
  // peel the rightmost constant: (.. + F)(g dt)(rest) = ..(f dt)(g dt)(rest) + F*(.. (F g dt)(rest))
  int k = -1;
  for (int i = int(w.size()) - 1; i >= 0; --i) {
    if (!w[i].plain()) {
      k = i;
      break;
    }
  }
  if (k < 0) return OmLin::single(w);
  OmWord drop = w;
  CycloQ8 c = drop[k].constant;
  drop[k].constant = CycloQ8(0);
  OmLin out = expand_mixed(drop);
  OmWord absorbed;
  absorbed.reserve(w.size() - 1);
  for (int i = 0; i < int(w.size()); ++i) {
    if (i == k) continue;
    absorbed.push_back(w[i]);
  }
  absorbed[k].form = absorbed[k].form.scaled(c);  // k now indexes the former k+1 letter
  out += expand_mixed(absorbed);
  return out;
}

}  // namespace apery
