#pragma once

#include <optional>
#include <string>
#include <vector>

#include "effdiff/bound_expr.hpp"
#include "effdiff/rank_assign.hpp"
#include "effdiff/ranking.hpp"

namespace effdiff {

// g^alpha(b): while alpha > 0, alpha <- alpha[x], x <- g(x). Stops at the budget and
// returns a lower bound (0 unless g is inflationary).
Val iterate(const MonotoneFn& g, const Ordinal& alpha, const Val& b, Budget& budget);

Val frak_d(const Val& n, const Val& b, Budget& bud);
Val frak_e(const Val& n, const Val& b, Budget& bud);
Val zeta0(const Val& n, const Val& d, Budget& bud);
Val zeta1(const Val& n, const Val& d, const Val& b, Budget& bud);
Val zeta2(const Val& n, const Val& d, const Val& b, Budget& bud);
Val upsilon(const Val& n, const Val& d, Budget& bud);
Val frak_p(const Val& n, const Val& d, Budget& bud);
Val frak_g(const Val& b, const Val& d, Budget& bud);
Val frak_u(const MonotoneFn& F, const Val& x, Budget& bud);
Val frak_u_plus(const MonotoneFn& F, const Val& b, Budget& bud);
Val frak_N(const MonotoneFn& F, const Val& b, Budget& bud);
Val frak_f(const MonotoneFn& F, const Val& b, Budget& bud);
Val frak_z(const Val& k, const Val& d, const Val& b, Budget& bud);
Val F_char(const Val& c, const Val& k, Budget& bud);
Val D_sat(const Val& b, const Val& n, const Val& m, const Val& i, Budget& bud);
Val D_cohere(const Val& b, const Val& n, const Val& m, const Val& i, Budget& bud);
Val D_char(const Val& b, const Val& n, const Val& m, const Val& i, Budget& bud);
Val i_sat(const Val& b, const Val& n, const Val& m, Budget& bud);
Val i_cohere(const Val& b, const Val& n, const Val& m, Budget& bud);
Val i_char(const Val& b, const Val& n, const Val& m, Budget& bud);
Val frak_k(const Val& n, const Val& d, Budget& bud);
Ordinal frak_j_index(std::uint64_t n, std::uint64_t m);
Val frak_j(const Val& n, const Val& m, const Val& i0, const Val& d, const MonotoneFn& F, Budget& bud);

// h(D, gamma) for a bad leader sequence gamma (degrees do not enter).
Val frak_h(const DiffShape& shape, const MonotoneFn& D, const std::vector<Derivative>& leaders, Budget& bud);

// CLI-facing catalogue names.
const std::vector<std::string>& catalogue_names();
// Argument kinds of an entry: N number, F function, a trailing '*' repeating the
// kind before it. DomainError on unknown names.
std::string catalogue_kinds(const std::string& name);
// Validated call node; DomainError on unknown names or wrong arity.
BoundExpr catalogue(const std::string& name, std::vector<BoundExpr> args);
// One-level unfolding of a catalogue call into arithmetic and further calls;
// nullopt for primitives (m, h) and non-calls.
std::optional<BoundExpr> unfold(const BoundExpr& call);
Val catalogue_call(const std::string& name, const std::vector<BoundExpr>& args, const EvalEnv& env, Budget& bud);

}  // namespace effdiff
