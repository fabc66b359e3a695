#include "qseries/motion.hpp"

#include <algorithm>
#include <sstream>

namespace qs {

namespace {

using I = std::int64_t;

I& slot(FreqSeq& f, I i) {
  if (i >= static_cast<I>(f.size())) f.resize(static_cast<std::size_t>(i + 1), 0);
  return f[static_cast<std::size_t>(i)];
}

void check_entries(const FreqSeq& f) {
  for (I x : f) {
    if (x < 0) throw InvalidParameters("frequency entries must be non-negative");
  }
}

// h = f_u + f_{u+1} dominating every later adjacent sum.
I dominant_height(const FreqSeq& f, I u) {
  if (u < 0) throw PreconditionViolated("focus index must be non-negative");
  check_entries(f);
  I h = entry(f, u) + entry(f, u + 1);
  if (h < 1) throw PreconditionViolated("f_u + f_{u+1} ≥ 1 violated at u=" + std::to_string(u));
  I top = max_adjacent_sum(f, u);
  if (top > h) {
    throw PreconditionViolated("adjacent sum " + std::to_string(top) + " exceeds h = " +
                               std::to_string(h) + " after u=" + std::to_string(u));
  }
  return h;
}

void check_reverse(const FreqSeq& f, I u) {
  if (u < 0) throw PreconditionViolated("focus index must be non-negative");
  check_entries(f);
  if (u > 0 && entry(f, u - 1) != 0) {
    throw PreconditionViolated("f_{u-1} = 0 violated at u=" + std::to_string(u));
  }
}

struct GammaRun {
  std::vector<FreqSeq> states;
  std::vector<I> steps;
};

GammaRun run_gamma(const FreqSeq& f) {
  check_entries(f);
  GammaRun out;
  out.states.push_back(canonical(f));
  for (I i = 0;; ++i) {
    const FreqSeq& cur = out.states.back();
    if (static_cast<I>(cur.size()) <= 2 * i) break;
    ReverseResult r = rpm(cur, 2 * i);
    out.steps.push_back(r.steps);
    out.states.push_back(canonical(std::move(r.seq)));
  }
  return out;
}

// Pair index i of the flattened sequence lambda_0 .. lambda_{s_1 - 1}.
std::vector<I> flatten(const MultiPartition& mp) {
  std::vector<I> out;
  for (int m = 1; m <= mp.k(); ++m) {
    const auto& p = mp.parts[static_cast<std::size_t>(m - 1)];
    out.insert(out.end(), p.begin(), p.end());
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

FreqSeq canonical(FreqSeq f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

std::int64_t entry(const FreqSeq& f, std::int64_t i) {
  return i >= 0 && i < static_cast<I>(f.size()) ? f[static_cast<std::size_t>(i)] : 0;
}

std::int64_t weight(const FreqSeq& f) {
  I w = 0;
  for (std::size_t i = 0; i < f.size(); ++i) w += static_cast<I>(i) * f[i];
  return w;
}

std::int64_t part_count(const FreqSeq& f) {
  I n = 0;
  for (I x : f) n += x;
  return n;
}

std::int64_t max_adjacent_sum(const FreqSeq& f, std::int64_t from) {
  I best = 0;
  for (I i = std::max<I>(from, 0); i < static_cast<I>(f.size()); ++i) {
    best = std::max(best, entry(f, i) + entry(f, i + 1));
  }
  return best;
}

std::string format_freq(const FreqSeq& f) {
  std::ostringstream os;
  os << "(";
  FreqSeq c = canonical(f);
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ")";
  return os.str();
}

FreqSeq freq_from_json(const nlohmann::json& j) {
  const nlohmann::json& arr = j.is_object() ? j.at("f") : j;
  if (!arr.is_array()) throw InvalidParameters("frequency sequence must be a JSON array");
  FreqSeq f;
  for (const auto& x : arr) {
    if (!x.is_number_integer()) throw InvalidParameters("frequency entries must be integers");
    f.push_back(x.get<I>());
  }
  check_entries(f);
  return canonical(f);
}

std::int64_t MultiPartition::size() const {
  I n = 0;
  for (const auto& p : parts) {
    for (I x : p) n += x;
  }
  return n;
}

std::int64_t MultiPartition::length() const {
  I n = 0;
  for (const auto& p : parts) n += static_cast<I>(p.size());
  return n;
}

std::vector<std::int64_t> MultiPartition::suffix_lengths() const {
  std::vector<I> s(parts.size(), 0);
  I acc = 0;
  for (std::size_t m = parts.size(); m-- > 0;) {
    acc += static_cast<I>(parts[m].size());
    s[m] = acc;
  }
  return s;
}

void MultiPartition::validate() const {
  for (std::size_t m = 0; m < parts.size(); ++m) {
    const auto& p = parts[m];
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] < 0) throw InvalidParameters("negative part in list " + std::to_string(m + 1));
      if (i > 0 && p[i] > p[i - 1]) {
        throw InvalidParameters("list " + std::to_string(m + 1) + " is not weakly decreasing");
      }
    }
  }
}

nlohmann::json MultiPartition::to_json() const { return {{"parts", parts}}; }

std::string MultiPartition::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t m = 0; m < parts.size(); ++m) {
    if (m) os << ",";
    if (parts[m].empty()) {
      os << "∅";
      continue;
    }
    os << "(";
    for (std::size_t i = 0; i < parts[m].size(); ++i) os << (i ? "," : "") << parts[m][i];
    os << ")";
  }
  os << ")";
  return os.str();
}

MultiPartition multipartition_from_json(const nlohmann::json& j) {
  const nlohmann::json& arr = j.is_object() ? j.at("parts") : j;
  if (!arr.is_array()) throw InvalidParameters("multipartition must be {\"parts\": [[...], ...]}");
  MultiPartition mp;
  for (const auto& list : arr) {
    if (!list.is_array()) throw InvalidParameters("each partition must be a JSON array");
    std::vector<I> p;
    for (const auto& x : list) {
      if (!x.is_number_integer()) throw InvalidParameters("parts must be integers");
      p.push_back(x.get<I>());
    }
    mp.parts.push_back(std::move(p));
  }
  mp.validate();
  return mp;
}

FreqSeq frame_from_lengths(const std::vector<std::int64_t>& s) {
  FreqSeq f;
  const I k = static_cast<I>(s.size());
  for (I h = k; h >= 1; --h) {
    I count = s[static_cast<std::size_t>(h - 1)] - (h < k ? s[static_cast<std::size_t>(h)] : 0);
    if (count < 0) throw InvalidParameters("frame lengths must be weakly decreasing");
    for (I c = 0; c < count; ++c) {
      f.push_back(h);
      f.push_back(0);
    }
  }
  return canonical(f);
}

FreqSeq frame_of(const MultiPartition& mp) { return frame_from_lengths(mp.suffix_lengths()); }

bool is_frame(const FreqSeq& f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < 0) return false;
    if (i % 2 == 1 && f[i] != 0) return false;
    if (i % 2 == 0 && i >= 2 && f[i] > f[i - 2]) return false;
  }
  return true;
}

MotionResult pm_stepwise(const FreqSeq& f, std::int64_t u, std::int64_t m) {
  if (m < 0) throw PreconditionViolated("motion count must be non-negative");
  const I h = dominant_height(f, u);
  FreqSeq g = f;
  I pos = u;
  for (I done = 0; done < m;) {
    if (entry(g, pos + 1) + entry(g, pos + 2) < h) {
      --slot(g, pos);
      ++slot(g, pos + 1);
      ++done;
    } else {
      ++pos;
    }
  }
  return {canonical(std::move(g)), pos};
}

MotionResult pm_explicit(const FreqSeq& f, std::int64_t u, std::int64_t m) {
  if (m < 0) throw PreconditionViolated("motion count must be non-negative");
  const I h = dominant_height(f, u);
  if (entry(f, u + 1) != 0) throw PreconditionViolated("(f_u, f_{u+1}) = (h, 0) violated");
  auto gap = [&](I i) { return h - (entry(f, i - 1) + entry(f, i)); };
  // prefix(t) = sum_{i=u+2}^{t} gap(i)
  I v = u + 2;
  I prefix = gap(v);
  I before = 0;
  while (prefix < m) {
    ++v;
    before = prefix;
    prefix += gap(v);
  }
  FreqSeq g;
  for (I i = 0; i < u; ++i) slot(g, i) = entry(f, i);
  for (I i = u; i < v - 2; ++i) slot(g, i) = entry(f, i + 2);
  slot(g, v - 2) = entry(f, v) + prefix - m;
  slot(g, v - 1) = entry(f, v - 1) + m - before;
  const I end = std::max<I>(static_cast<I>(f.size()), v);
  for (I i = v; i < end; ++i) slot(g, i) = entry(f, i);
  return {canonical(std::move(g)), v - 2};
}

ReverseResult rpm(const FreqSeq& f, std::int64_t u) {
  check_reverse(f, u);
  const I h = max_adjacent_sum(f, u);
  I v = u + 2;
  while (entry(f, v - 2) + entry(f, v - 1) != h) ++v;
  FreqSeq g;
  for (I i = 0; i < u; ++i) slot(g, i) = entry(f, i);
  slot(g, u) = h;
  slot(g, u + 1) = 0;
  for (I i = u + 2; i < v; ++i) slot(g, i) = entry(f, i - 2);
  for (I i = v; i < static_cast<I>(f.size()); ++i) slot(g, i) = entry(f, i);
  I steps = h - entry(f, u);
  for (I i = u; i <= v - 3; ++i) steps += h - (entry(f, i) + entry(f, i + 1));
  return {canonical(std::move(g)), steps};
}

ReverseResult rpm_stepwise(const FreqSeq& f, std::int64_t u) {
  check_reverse(f, u);
  const I h = max_adjacent_sum(f, u);
  FreqSeq g = f;
  I steps = 0;
  if (h == 0) return {canonical(std::move(g)), 0};
  I v = u;
  while (entry(g, v) + entry(g, v + 1) != h) ++v;
  while (!(v == u && entry(g, u + 1) == 0)) {
    if (entry(g, v - 1) + entry(g, v) < h) {
      ++slot(g, v);
      --slot(g, v + 1);
      ++steps;
    } else {
      --v;
    }
  }
  return {canonical(std::move(g)), steps};
}

std::string MotionTrace::to_text() const {
  std::ostringstream os;
  for (const auto& s : steps) {
    if (s.op == "motion") {
      os << "⇒ m=" << s.params.at("m").get<I>() << " [u=" << s.params.at("u").get<I>() << "] ";
    } else if (s.op == "shift") {
      os << "→ [u=" << s.params.at("u").get<I>() << "] ";
    } else if (s.op == "reverse") {
      os << "⇐ steps=" << s.params.at("steps").get<I>() << " [u=" << s.params.at("u").get<I>()
         << "] ";
    } else if (s.op == "frame") {
      os << "frame ";
    } else if (s.op == "start") {
      os << "start ";
    }
    os << format_freq(s.state) << "\n";
  }
  return os.str();
}

nlohmann::json MotionTrace::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : steps) {
    out.push_back({{"state", canonical(s.state)}, {"op", s.op}, {"params", s.params}});
  }
  return out;
}

MotionTrace pm_trace(const FreqSeq& f, std::int64_t u, std::int64_t m) {
  if (m < 0) throw PreconditionViolated("motion count must be non-negative");
  const I h = dominant_height(f, u);
  MotionTrace tr;
  FreqSeq g = canonical(f);
  tr.steps.push_back({g, "start", {{"u", u}, {"h", h}}});
  I pos = u;
  for (I done = 0; done < m;) {
    if (entry(g, pos + 1) + entry(g, pos + 2) < h) {
      --slot(g, pos);
      ++slot(g, pos + 1);
      ++done;
      g = canonical(std::move(g));
      tr.steps.push_back({g, "motion", {{"u", pos}, {"m", 1}}});
    } else {
      ++pos;
      tr.steps.push_back({g, "shift", {{"u", pos}}});
    }
  }
  return tr;
}

MotionTrace lambda_trace(const MultiPartition& mp) {
  mp.validate();
  MotionTrace tr;
  FreqSeq theta = frame_of(mp);
  std::vector<I> lam = flatten(mp);
  const I s1 = static_cast<I>(lam.size());
  tr.steps.push_back({theta, "frame", {{"i", s1}}});
  for (I i = s1 - 1; i >= 0; --i) {
    I m = lam[static_cast<std::size_t>(i)];
    MotionResult r = pm_explicit(theta, 2 * i, m);
    theta = std::move(r.seq);
    tr.steps.push_back({theta, "motion", {{"i", i}, {"u", 2 * i}, {"m", m}, {"landing", r.focus}}});
  }
  return tr;
}

FreqSeq lambda(const MultiPartition& mp) { return lambda_trace(mp).steps.back().state; }

MotionTrace gamma_trace(const FreqSeq& f) {
  GammaRun run = run_gamma(f);
  MotionTrace tr;
  tr.steps.push_back({run.states.front(), "start", nlohmann::json::object()});
  for (std::size_t i = 0; i < run.steps.size(); ++i) {
    tr.steps.push_back({run.states[i + 1], "reverse",
                        {{"i", i}, {"u", 2 * static_cast<I>(i)}, {"steps", run.steps[i]}}});
  }
  return tr;
}

MultiPartition gamma(const FreqSeq& f, std::optional<int> k) {
  GammaRun run = run_gamma(f);
  const I inferred = max_adjacent_sum(run.states.front());
  I kk = inferred;
  if (k) {
    if (*k < inferred) {
      throw InvalidParameters("sequence has adjacent sum " + std::to_string(inferred) +
                              " > k = " + std::to_string(*k));
    }
    kk = *k;
  }
  const FreqSeq& frame = run.states.back();
  MultiPartition mp;
  mp.parts.assign(static_cast<std::size_t>(kk), {});
  for (std::size_t i = 0; i < run.steps.size(); ++i) {
    I h = entry(frame, 2 * static_cast<I>(i));
    mp.parts[static_cast<std::size_t>(h - 1)].push_back(run.steps[i]);
  }
  for (auto& p : mp.parts) std::reverse(p.begin(), p.end());
  return mp;
}

}  // namespace qs
