#include "suspfactor/qlin.hpp"

#include <mutex>
#include <sstream>

namespace suspfactor {

Rational parse_rational(const std::string& text) {
    auto bad = [&] { throw std::invalid_argument("not a rational: '" + text + "'"); };
    if (text.empty()) bad();
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) bad();
        return Rational(num, den);
    } catch (const std::runtime_error&) {  // cpp_int rejects malformed digits
        bad();
    }
    return Rational();  // unreachable
}

QLin::QLin(Rational rational_part) { c_[0] = std::move(rational_part); }

QLin::QLin(Rational q0, Rational q1, Rational q2, Rational q3)
    : c_{std::move(q0), std::move(q1), std::move(q2), std::move(q3)} {}

bool QLin::is_zero() const {
    return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
}

bool QLin::is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

bool QLin::is_integer() const { return is_rational() && denominator(c_[0]) == 1; }

QLin QLin::operator+(const QLin& o) const {
    QLin r = *this;
    r += o;
    return r;
}

QLin QLin::operator-(const QLin& o) const {
    QLin r = *this;
    r -= o;
    return r;
}

QLin QLin::operator-() const {
    QLin r;
    for (int i = 0; i < kBasis; ++i) r.c_[i] = -c_[i];
    return r;
}

QLin& QLin::operator+=(const QLin& o) {
    for (int i = 0; i < kBasis; ++i) c_[i] += o.c_[i];
    return *this;
}

QLin& QLin::operator-=(const QLin& o) {
    for (int i = 0; i < kBasis; ++i) c_[i] -= o.c_[i];
    return *this;
}

QLin QLin::scaled(const Rational& k) const {
    QLin r;
    for (int i = 0; i < kBasis; ++i) r.c_[i] = c_[i] * k;
    return r;
}

namespace {

// Shared, monotonically refining dyadic enclosures of the three surds.
// Bisection against exact squaring; progress is never discarded, so a tight
// comparison pays its refinement cost once per process.
struct SurdCell {
    int radicand;
    Rational lo, hi;
};

std::mutex g_surd_mutex;
SurdCell g_surds[3] = {
    {5, Rational(2), Rational(9, 4)},      // sqrt5 in [2, 2.25]
    {2, Rational(1), Rational(3, 2)},      // sqrt2 in [1, 1.5]
    {3, Rational(3, 2), Rational(7, 4)},   // sqrt3 in [1.5, 1.75]
};

QLin::Enclosure surd_enclosure(int idx, const Rational& width) {
    std::lock_guard<std::mutex> lock(g_surd_mutex);
    SurdCell& s = g_surds[idx];
    while (s.hi - s.lo > width) {
        Rational mid = (s.lo + s.hi) / 2;
        if (mid * mid <= s.radicand)
            s.lo = mid;
        else
            s.hi = mid;
    }
    return {s.lo, s.hi};
}

std::mutex g_width_mutex;
Rational g_start_width(1, 1000000);

}  // namespace

void set_compare_start_width(const Rational& width) {
    Rational w = width;
    if (w <= 0) w = Rational(1, 1000000);
    if (w > Rational(1, 2)) w = Rational(1, 2);
    std::lock_guard<std::mutex> lock(g_width_mutex);
    g_start_width = w;
}

Rational compare_start_width() {
    std::lock_guard<std::mutex> lock(g_width_mutex);
    return g_start_width;
}

QLin::Enclosure QLin::enclose(const Rational& width) const {
    if (width <= 0) throw std::invalid_argument("enclosure width must be positive");
    int surd_terms = 0;
    for (int i = 1; i < kBasis; ++i)
        if (c_[i] != 0) ++surd_terms;
    Enclosure out{c_[0], c_[0]};
    if (surd_terms == 0) return out;
    for (int i = 1; i < kBasis; ++i) {
        if (c_[i] == 0) continue;
        Rational share = width / (surd_terms * abs(c_[i]));
        Enclosure e = surd_enclosure(i - 1, share);
        if (c_[i] > 0) {
            out.lo += c_[i] * e.lo;
            out.hi += c_[i] * e.hi;
        } else {
            out.lo += c_[i] * e.hi;
            out.hi += c_[i] * e.lo;
        }
    }
    return out;
}

QLin::Order QLin::compare(const QLin& o) const {
    QLin d = *this - o;
    if (d.is_zero()) return Order::Equal;           // basis independence: the only equality
    if (d.is_rational())
        return d.c_[0] > 0 ? Order::Greater : Order::Less;
    Rational width = compare_start_width();
    for (int round = 0; round < 64; ++round) {
        Enclosure e = d.enclose(width);
        if (e.lo > 0) return Order::Greater;
        if (e.hi < 0) return Order::Less;
        width *= width;                              // doubles the precision's digit count
    }
    // Unreachable: a nonzero element separates from 0 at some finite width.
    throw std::logic_error("sign resolution failed: " + d.str());
}

Int QLin::floor() const {
    if (is_rational()) return rational_floor(c_[0]);
    Rational width(1, 4);
    for (int round = 0; round < 64; ++round) {
        Enclosure e = enclose(width);
        Int flo = rational_floor(e.lo), fhi = rational_floor(e.hi);
        if (flo == fhi) return flo;
        width *= width;
    }
    throw std::logic_error("floor resolution failed: " + str());
}

QLin QLin::frac() const {
    QLin r = *this;
    r.c_[0] -= Rational(floor());
    return r;
}

double QLin::approx() const {
    Enclosure e = enclose(Rational(1, 1000000000000LL));
    return ((e.lo + e.hi) / 2).convert_to<double>();
}

std::string QLin::str() const {
    static const char* names[kBasis] = {"", "sqrt5", "sqrt2", "sqrt3"};
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < kBasis; ++i) {
        if (c_[i] == 0) continue;
        Rational a = c_[i];
        if (!first) {
            os << (a > 0 ? " + " : " - ");
            if (a < 0) a = -a;
        }
        first = false;
        if (i == 0) {
            os << a;
        } else {
            if (a != 1) os << a << "*";
            os << names[i];
        }
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace suspfactor
