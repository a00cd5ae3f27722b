#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oracle {

Form reduce(Form f)
{
    for (;;) {
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
        }
        if (f.b > f.a || f.b <= -f.a) {
            // X -> X + kY with k = floor((a - b) / 2a), putting b in (-a, a]
            long long num = f.a - f.b, den = 2 * f.a;
            long long k = num / den - ((num % den != 0) && (num < 0));
            long long b = f.b + 2 * f.a * k;
            f.c = f.a * k * k + f.b * k + f.c;
            f.b = b;
            continue;
        }
        if (f.a > f.c)
            continue;
        break;
    }
    if (f.a == f.c && f.b < 0)
        f.b = -f.b;
    return f;
}

std::vector<Form> reduced_forms(long long D)
{
    std::vector<Form> out;
    for (long long a = 1; 3 * a * a <= D; ++a)
        for (long long b = -a + 1; b <= a; ++b) {
            long long num = b * b + D;
            if (num % (4 * a))
                continue;
            long long c = num / (4 * a);
            if (c < a || (c == a && b < 0))
                continue;
            out.push_back({a, b, c});
        }
    return out;
}

long long class_count(long long D)
{
    return static_cast<long long>(reduced_forms(D).size());
}

mpq_class weighted_count(long long D)
{
    mpq_class sum = 0;
    for (const auto & f : reduced_forms(D)) {
        if (f.a == f.b && f.b == f.c)
            sum += mpq_class(1, 3);
        else if (f.b == 0 && f.a == f.c)
            sum += mpq_class(1, 2);
        else
            sum += 1;
    }
    sum.canonicalize();
    return sum;
}

bool squarefree(long long n)
{
    for (long long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0)
            return false;
    return true;
}

bool fundamental(long long D)
{
    long long d = -D;
    if (((d % 4) + 4) % 4 == 1)
        return squarefree(D);
    if (d % 4 != 0)
        return false;
    long long m = d / 4; // negative
    long long r = ((m % 4) + 4) % 4;
    return (r == 2 || r == 3) && squarefree(-m);
}

long long floor_two_sqrt(long long p)
{
    long long n = 0;
    while ((n + 1) * (n + 1) <= 4 * p)
        ++n;
    return n;
}

std::vector<long long> prime_divisors(long long n)
{
    std::vector<long long> out;
    for (long long p = 2; p <= n; ++p) {
        if (n % p)
            continue;
        out.push_back(p);
        while (n % p == 0)
            n /= p;
    }
    return out;
}

namespace {

double value(const std::vector<std::vector<double>> & G, const std::vector<long long> & n)
{
    double s = 0;
    for (std::size_t i = 0; i < n.size(); ++i)
        for (std::size_t j = 0; j < n.size(); ++j)
            s += G[i][j] * static_cast<double>(n[i]) * static_cast<double>(n[j]);
    return s;
}

// counts points with max |n_i| == R (shell) and <= R (box) below T
void scan_box(const std::vector<std::vector<double>> & G, double T, long long R, long long & inside,
              long long & shell_hits)
{
    const std::size_t r = G.size();
    std::vector<long long> n(r, -R);
    inside = shell_hits = 0;
    for (;;) {
        if (value(G, n) <= T) {
            ++inside;
            bool on_shell = false;
            for (auto x : n)
                on_shell |= (x == R || x == -R);
            shell_hits += on_shell;
        }
        std::size_t i = 0;
        while (i < r && n[i] == R)
            n[i++] = -R;
        if (i == r)
            break;
        ++n[i];
    }
}

} // namespace

long long lattice_count(const std::vector<std::vector<double>> & G, double T)
{
    // the sublevel set is convex and symmetric, so once a shell is empty every
    // larger shell is empty too
    for (long long R = 1;; ++R) {
        long long inside, shell;
        scan_box(G, T, R, inside, shell);
        if (shell == 0)
            return inside;
        if (R > 200)
            throw std::runtime_error("lattice box did not close");
    }
}

double min_eigenvalue(const std::vector<std::vector<double>> & G)
{
    if (G.size() == 2) {
        double tr = G[0][0] + G[1][1];
        double det = G[0][0] * G[1][1] - G[0][1] * G[1][0];
        return tr / 2 - std::sqrt(tr * tr / 4 - det);
    }
    if (G.size() != 3)
        throw std::invalid_argument("size");
    // trigonometric solution of the characteristic cubic
    double p1 = G[0][1] * G[0][1] + G[0][2] * G[0][2] + G[1][2] * G[1][2];
    double q = (G[0][0] + G[1][1] + G[2][2]) / 3;
    double p2 = (G[0][0] - q) * (G[0][0] - q) + (G[1][1] - q) * (G[1][1] - q) + (G[2][2] - q) * (G[2][2] - q) + 2 * p1;
    double p = std::sqrt(p2 / 6);
    double B[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            B[i][j] = (G[i][j] - (i == j ? q : 0)) / p;
    double detB = B[0][0] * (B[1][1] * B[2][2] - B[1][2] * B[2][1]) - B[0][1] * (B[1][0] * B[2][2] - B[1][2] * B[2][0]) +
                  B[0][2] * (B[1][0] * B[2][1] - B[1][1] * B[2][0]);
    double r = std::clamp(detB / 2, -1.0, 1.0);
    double phi = std::acos(r) / 3;
    return q + 2 * p * std::cos(phi + 2 * std::numbers::pi / 3);
}

} // namespace oracle
