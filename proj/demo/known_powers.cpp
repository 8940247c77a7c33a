// Perfect powers among sums of two Fibonacci numbers, and an explicit bound
// for the same equation over the convergents of sqrt 2.

#include <iostream>

#include "qbound/bounds.hpp"
#include "qbound/cfrac.hpp"
#include "qbound/search.hpp"

int main()
{
    using namespace qbound;

    ContinuedFraction golden = expand(make_quadnum(Rational(-1, 2), Rational(1, 2), 5));
    std::cout << "golden: a0 = " << golden.a0 << ", period length " << golden.s() << "\n";

    for (const auto& s : enumerate_solutions(golden, {40, 5, 2})) {
        std::cout << "  " << s.y << "^" << s.a << " = " << s.value << " = q_" << s.N[0] << " + q_" << s.N[1]
                  << "\n";
    }

    QuadNum root2 = make_quadnum(Rational(0), Rational(1), 2);
    ContinuedFraction cf = expand(root2);
    BinetData bd = binet_data(cf, 128, root2.radicand());
    BoundReport rep = theorem_ham_bound(bd, 2, 2, 128);
    std::cout << "sqrt 2, K = 2, l = 2: n1 <= " << rep.n1_bound.hi_string(6) << "\n";
}
