/*!
  \file ratlp.hpp
  \brief Exact linear programming over arbitrary-precision rationals.

  Dense two-phase simplex with Bland's pivoting rule (anti-cycling, hence
  guaranteed termination).  Every Optimal answer is re-checked before being
  returned: the assignment is substituted into all constraints and an exact
  dual certificate with matching objective value is produced and verified on
  the normalized standard form.
*/

#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace qlimit
{

enum class relation
{
  le,
  eq,
  ge
};

struct lp_constraint
{
  std::vector<rational> coeffs;
  relation rel;
  rational rhs;
};

/*! \brief A linear program; variables default to lower bound 0 and no upper bound. */
struct linear_program
{
  explicit linear_program( std::size_t num_vars, bool maximize_ = false )
      : maximize( maximize_ ), objective( num_vars, 0 ), lower( num_vars, rational( 0 ) ),
        upper( num_vars, std::nullopt )
  {
  }

  std::size_t num_vars() const { return objective.size(); }

  void add_constraint( std::vector<rational> coeffs, relation rel, rational rhs )
  {
    if ( coeffs.size() != num_vars() )
    {
      throw dimension_mismatch_error( "constraint width does not match variable count" );
    }
    constraints.push_back( { std::move( coeffs ), rel, std::move( rhs ) } );
  }

  void set_free( std::size_t j )
  {
    lower.at( j ) = std::nullopt;
    upper.at( j ) = std::nullopt;
  }

  bool maximize = false;
  std::vector<rational> objective;
  std::vector<lp_constraint> constraints;
  std::vector<std::optional<rational>> lower;
  std::vector<std::optional<rational>> upper;
};

enum class lp_status
{
  optimal,
  infeasible,
  unbounded
};

struct lp_solution
{
  lp_status status = lp_status::infeasible;
  rational value = 0;
  std::vector<rational> assignment;      /* original variables */
  std::vector<rational> dual;            /* dual of the normalized standard form */
};

namespace lp_detail
{

/* normalized standard form: min c.u  s.t.  A u = b, u >= 0, b >= 0 */
struct standard_form
{
  std::size_t cols = 0;
  std::vector<std::vector<rational>> rows; /* each width cols, equality rows */
  std::vector<rational> rhs;
  std::vector<rational> cost;

  /* original variable j = sum of (column, coeff) + shift */
  struct var_map
  {
    std::vector<std::pair<std::size_t, rational>> parts;
    rational shift = 0;
  };
  std::vector<var_map> vars;
};

inline standard_form normalize( linear_program const& lp )
{
  standard_form sf;
  std::size_t const n = lp.num_vars();
  sf.vars.resize( n );

  /* variable substitutions */
  std::vector<lp_constraint> extra_rows;
  for ( std::size_t j = 0; j < n; ++j )
  {
    auto& vm = sf.vars[j];
    if ( lp.lower[j] )
    {
      /* x = L + u */
      vm.shift = *lp.lower[j];
      vm.parts = { { sf.cols, rational( 1 ) } };
      sf.cols += 1;
      if ( lp.upper[j] )
      {
        std::vector<rational> row( n, 0 );
        row[j] = 1;
        extra_rows.push_back( { std::move( row ), relation::le, *lp.upper[j] } );
      }
    }
    else if ( lp.upper[j] )
    {
      /* x = U - u */
      vm.shift = *lp.upper[j];
      vm.parts = { { sf.cols, rational( -1 ) } };
      sf.cols += 1;
    }
    else
    {
      /* x = u+ - u- */
      vm.parts = { { sf.cols, rational( 1 ) }, { sf.cols + 1, rational( -1 ) } };
      sf.cols += 2;
    }
  }

  std::vector<lp_constraint> all = lp.constraints;
  all.insert( all.end(), extra_rows.begin(), extra_rows.end() );

  std::size_t const structural = sf.cols;
  std::size_t slack_count = 0;
  for ( auto const& c : all )
  {
    if ( c.rel != relation::eq )
    {
      ++slack_count;
    }
  }
  sf.cols += slack_count;

  sf.cost.assign( sf.cols, 0 );
  for ( std::size_t j = 0; j < n; ++j )
  {
    rational cj = lp.maximize ? -lp.objective[j] : lp.objective[j];
    for ( auto const& [col, coef] : sf.vars[j].parts )
    {
      sf.cost[col] += cj * coef;
    }
  }

  std::size_t slack = structural;
  for ( auto const& c : all )
  {
    std::vector<rational> row( sf.cols, 0 );
    rational b = c.rhs;
    for ( std::size_t j = 0; j < n; ++j )
    {
      if ( c.coeffs[j] == 0 )
      {
        continue;
      }
      b -= c.coeffs[j] * sf.vars[j].shift;
      for ( auto const& [col, coef] : sf.vars[j].parts )
      {
        row[col] += c.coeffs[j] * coef;
      }
    }
    if ( c.rel == relation::le )
    {
      row[slack++] = 1;
    }
    else if ( c.rel == relation::ge )
    {
      row[slack++] = -1;
    }
    if ( b < 0 )
    {
      for ( auto& v : row )
      {
        v = -v;
      }
      b = -b;
    }
    sf.rows.push_back( std::move( row ) );
    sf.rhs.push_back( std::move( b ) );
  }
  return sf;
}

/* one Bland pivot step; returns false when no entering column exists */
inline bool pivot_step( std::vector<std::vector<rational>>& t, std::vector<std::size_t>& basis,
                        std::size_t cols, std::vector<rational>& obj, rational& obj_val,
                        std::vector<rational>& rhs, bool& unbounded )
{
  std::size_t enter = cols;
  for ( std::size_t j = 0; j < cols; ++j )
  {
    if ( obj[j] < 0 )
    {
      enter = j;
      break;
    }
  }
  if ( enter == cols )
  {
    return false;
  }
  std::size_t leave = t.size();
  for ( std::size_t i = 0; i < t.size(); ++i )
  {
    if ( t[i][enter] <= 0 )
    {
      continue;
    }
    if ( leave == t.size() )
    {
      leave = i;
      continue;
    }
    rational cur = rhs[i] * t[leave][enter];
    rational best = rhs[leave] * t[i][enter];
    if ( cur < best || ( cur == best && basis[i] < basis[leave] ) )
    {
      leave = i;
    }
  }
  if ( leave == t.size() )
  {
    unbounded = true;
    return false;
  }
  rational const piv = t[leave][enter];
  for ( auto& v : t[leave] )
  {
    v /= piv;
  }
  rhs[leave] /= piv;
  for ( std::size_t i = 0; i < t.size(); ++i )
  {
    if ( i == leave || t[i][enter] == 0 )
    {
      continue;
    }
    rational const factor = t[i][enter];
    for ( std::size_t j = 0; j < cols; ++j )
    {
      if ( t[leave][j] != 0 )
      {
        t[i][j] -= factor * t[leave][j];
      }
    }
    rhs[i] -= factor * rhs[leave];
  }
  if ( obj[enter] != 0 )
  {
    rational const factor = obj[enter];
    for ( std::size_t j = 0; j < cols; ++j )
    {
      if ( t[leave][j] != 0 )
      {
        obj[j] -= factor * t[leave][j];
      }
    }
    obj_val -= factor * rhs[leave];
  }
  basis[leave] = enter;
  return true;
}

/* solves B^T y = c_B exactly; B given by basis columns of the original rows */
inline std::vector<rational> dual_from_basis( standard_form const& sf, std::vector<std::size_t> const& basis,
                                              std::size_t artificial_base )
{
  std::size_t const m = sf.rows.size();
  std::vector<std::vector<rational>> aug( m, std::vector<rational>( m + 1, 0 ) );
  for ( std::size_t k = 0; k < m; ++k )
  {
    /* column k of B^T = row k of B; B's row i entry = A[i][basis[k]] */
    for ( std::size_t i = 0; i < m; ++i )
    {
      aug[k][i] = basis[k] < artificial_base ? sf.rows[i][basis[k]] : rational( k == i ? 1 : 0 );
    }
    aug[k][m] = basis[k] < artificial_base ? sf.cost[basis[k]] : rational( 0 );
  }
  /* Gaussian elimination */
  std::size_t r = 0;
  std::vector<std::size_t> where( m, m );
  for ( std::size_t c = 0; c < m && r < m; ++c )
  {
    std::size_t sel = r;
    while ( sel < m && aug[sel][c] == 0 )
    {
      ++sel;
    }
    if ( sel == m )
    {
      continue;
    }
    std::swap( aug[sel], aug[r] );
    rational const p = aug[r][c];
    for ( auto& v : aug[r] )
    {
      v /= p;
    }
    for ( std::size_t i = 0; i < m; ++i )
    {
      if ( i != r && aug[i][c] != 0 )
      {
        rational const f = aug[i][c];
        for ( std::size_t j = c; j <= m; ++j )
        {
          aug[i][j] -= f * aug[r][j];
        }
      }
    }
    where[c] = r++;
  }
  std::vector<rational> y( m, 0 );
  for ( std::size_t c = 0; c < m; ++c )
  {
    if ( where[c] < m )
    {
      y[c] = aug[where[c]][m];
    }
  }
  return y;
}

} // namespace lp_detail

/*! \brief Solves the program exactly.

  The returned assignment satisfies every constraint exactly; optimality is
  certified by an exact dual solution (both are re-verified internally, and a
  violation raises qlimit::error).
*/
inline lp_solution solve( linear_program const& lp, std::ostream* debug = nullptr )
{
  using namespace lp_detail;
  standard_form sf = normalize( lp );
  std::size_t const m = sf.rows.size();
  std::size_t const cols = sf.cols + m; /* artificials appended */

  std::vector<std::vector<rational>> t( m, std::vector<rational>( cols, 0 ) );
  std::vector<rational> rhs = sf.rhs;
  std::vector<std::size_t> basis( m );
  for ( std::size_t i = 0; i < m; ++i )
  {
    for ( std::size_t j = 0; j < sf.cols; ++j )
    {
      t[i][j] = sf.rows[i][j];
    }
    t[i][sf.cols + i] = 1;
    basis[i] = sf.cols + i;
  }

  /* phase 1: minimize the sum of artificials */
  std::vector<rational> obj( cols, 0 );
  rational obj_val = 0;
  for ( std::size_t i = 0; i < m; ++i )
  {
    for ( std::size_t j = 0; j < cols; ++j )
    {
      obj[j] -= t[i][j];
    }
    obj_val -= rhs[i];
  }
  for ( std::size_t i = 0; i < m; ++i )
  {
    obj[sf.cols + i] = 0;
  }
  bool unbounded = false;
  std::size_t pivots = 0;
  while ( pivot_step( t, basis, cols, obj, obj_val, rhs, unbounded ) )
  {
    ++pivots;
  }
  if ( debug )
  {
    *debug << "phase1: " << m << " rows, " << cols << " cols, " << pivots << " pivots\n";
  }
  if ( obj_val != 0 )
  {
    lp_solution out;
    out.status = lp_status::infeasible;
    return out;
  }

  /* drive artificials out of the basis, dropping redundant rows */
  std::vector<bool> live_row( m, true );
  for ( std::size_t i = 0; i < m; ++i )
  {
    if ( basis[i] < sf.cols )
    {
      continue;
    }
    std::size_t enter = sf.cols;
    for ( std::size_t j = 0; j < sf.cols; ++j )
    {
      if ( t[i][j] != 0 )
      {
        enter = j;
        break;
      }
    }
    if ( enter == sf.cols )
    {
      live_row[i] = false;
      continue;
    }
    rational const piv = t[i][enter];
    for ( auto& v : t[i] )
    {
      v /= piv;
    }
    rhs[i] /= piv;
    for ( std::size_t r2 = 0; r2 < m; ++r2 )
    {
      if ( r2 != i && t[r2][enter] != 0 )
      {
        rational const f = t[r2][enter];
        for ( std::size_t j = 0; j < cols; ++j )
        {
          t[r2][j] -= f * t[i][j];
        }
        rhs[r2] -= f * rhs[i];
      }
    }
    basis[i] = enter;
  }

  /* phase 2 */
  obj.assign( cols, 0 );
  for ( std::size_t j = 0; j < sf.cols; ++j )
  {
    obj[j] = sf.cost[j];
  }
  for ( std::size_t i = 0; i < m; ++i )
  {
    obj[sf.cols + i] = 1; /* keep artificials unattractive */
  }
  obj_val = 0;
  for ( std::size_t i = 0; i < m; ++i )
  {
    if ( !live_row[i] || obj[basis[i]] == 0 )
    {
      continue;
    }
    rational const f = obj[basis[i]];
    for ( std::size_t j = 0; j < cols; ++j )
    {
      if ( t[i][j] != 0 )
      {
        obj[j] -= f * t[i][j];
      }
    }
    obj_val -= f * rhs[i];
  }
  pivots = 0;
  unbounded = false;
  {
    /* restrict pivoting to live rows by zeroing dead ones */
    std::vector<std::vector<rational>> live_t;
    std::vector<rational> live_rhs;
    std::vector<std::size_t> live_basis;
    std::vector<std::size_t> origin;
    for ( std::size_t i = 0; i < m; ++i )
    {
      if ( live_row[i] )
      {
        live_t.push_back( std::move( t[i] ) );
        live_rhs.push_back( rhs[i] );
        live_basis.push_back( basis[i] );
        origin.push_back( i );
      }
    }
    while ( pivot_step( live_t, live_basis, sf.cols, obj, obj_val, live_rhs, unbounded ) )
    {
      ++pivots;
    }
    if ( debug )
    {
      *debug << "phase2: " << pivots << " pivots\n";
    }
    if ( unbounded )
    {
      lp_solution out;
      out.status = lp_status::unbounded;
      return out;
    }
    /* read the solution in standard-form variables */
    std::vector<rational> u( sf.cols, 0 );
    for ( std::size_t i = 0; i < live_t.size(); ++i )
    {
      if ( live_basis[i] < sf.cols )
      {
        u[live_basis[i]] = live_rhs[i];
      }
    }

    lp_solution out;
    out.status = lp_status::optimal;
    out.assignment.resize( lp.num_vars() );
    for ( std::size_t j = 0; j < lp.num_vars(); ++j )
    {
      rational x = sf.vars[j].shift;
      for ( auto const& [col, coef] : sf.vars[j].parts )
      {
        x += coef * u[col];
      }
      out.assignment[j] = x;
    }
    rational obj_primal = 0;
    for ( std::size_t j = 0; j < lp.num_vars(); ++j )
    {
      obj_primal += lp.objective[j] * out.assignment[j];
    }
    out.value = obj_primal;

    /* re-substitution: exact feasibility of the returned assignment */
    for ( auto const& c : lp.constraints )
    {
      rational lhs = 0;
      for ( std::size_t j = 0; j < lp.num_vars(); ++j )
      {
        lhs += c.coeffs[j] * out.assignment[j];
      }
      bool ok = ( c.rel == relation::le ) ? lhs <= c.rhs
                                          : ( c.rel == relation::ge ) ? lhs >= c.rhs : lhs == c.rhs;
      if ( !ok )
      {
        throw error( "internal: LP assignment violates a constraint after solve" );
      }
    }
    for ( std::size_t j = 0; j < lp.num_vars(); ++j )
    {
      if ( lp.lower[j] && out.assignment[j] < *lp.lower[j] )
      {
        throw error( "internal: LP assignment violates a lower bound" );
      }
      if ( lp.upper[j] && out.assignment[j] > *lp.upper[j] )
      {
        throw error( "internal: LP assignment violates an upper bound" );
      }
    }

    /* dual certificate on the standard form: B^T y = c_B, A^T y <= c, y.b = c.u */
    {
      std::vector<std::size_t> full_basis;
      std::vector<std::vector<rational>> rebuilt_rows;
      std::vector<rational> rebuilt_rhs;
      std::size_t li = 0;
      standard_form live_sf;
      live_sf.cols = sf.cols;
      live_sf.cost = sf.cost;
      for ( std::size_t i = 0; i < m; ++i )
      {
        if ( live_row[i] )
        {
          live_sf.rows.push_back( sf.rows[i] );
          live_sf.rhs.push_back( sf.rhs[i] );
          full_basis.push_back( live_basis[li++] );
        }
      }
      out.dual = lp_detail::dual_from_basis( live_sf, full_basis, sf.cols );
      rational ydotb = 0;
      for ( std::size_t i = 0; i < live_sf.rows.size(); ++i )
      {
        ydotb += out.dual[i] * live_sf.rhs[i];
      }
      rational internal_obj = lp.maximize ? -obj_primal : obj_primal;
      if ( ydotb != internal_obj )
      {
        throw error( "internal: dual objective does not match primal optimum" );
      }
      for ( std::size_t j = 0; j < sf.cols; ++j )
      {
        rational red = sf.cost[j];
        for ( std::size_t i = 0; i < live_sf.rows.size(); ++i )
        {
          red -= out.dual[i] * live_sf.rows[i][j];
        }
        if ( red < 0 )
        {
          throw error( "internal: dual certificate infeasible" );
        }
      }
    }
    return out;
  }
}

struct feasibility_result
{
  bool feasible = false;
  std::vector<rational> assignment;
};

/*! \brief Exact feasibility of A x = b with free variables (Gaussian elimination). */
inline feasibility_result feasible_equalities( std::vector<std::vector<rational>> const& a,
                                               std::vector<rational> const& b )
{
  std::size_t const m = a.size();
  if ( b.size() != m )
  {
    throw dimension_mismatch_error( "rhs size does not match row count" );
  }
  std::size_t const n = m ? a[0].size() : 0;
  std::vector<std::vector<rational>> aug( m, std::vector<rational>( n + 1 ) );
  for ( std::size_t i = 0; i < m; ++i )
  {
    if ( a[i].size() != n )
    {
      throw dimension_mismatch_error( "ragged constraint matrix" );
    }
    for ( std::size_t j = 0; j < n; ++j )
    {
      aug[i][j] = a[i][j];
    }
    aug[i][n] = b[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for ( std::size_t c = 0; c < n && r < m; ++c )
  {
    std::size_t sel = r;
    while ( sel < m && aug[sel][c] == 0 )
    {
      ++sel;
    }
    if ( sel == m )
    {
      continue;
    }
    std::swap( aug[sel], aug[r] );
    rational const p = aug[r][c];
    for ( auto& v : aug[r] )
    {
      v /= p;
    }
    for ( std::size_t i = 0; i < m; ++i )
    {
      if ( i != r && aug[i][c] != 0 )
      {
        rational const f = aug[i][c];
        for ( std::size_t j = c; j <= n; ++j )
        {
          aug[i][j] -= f * aug[r][j];
        }
      }
    }
    pivot_col.push_back( c );
    ++r;
  }
  for ( std::size_t i = r; i < m; ++i )
  {
    if ( aug[i][n] != 0 )
    {
      return {};
    }
  }
  feasibility_result res;
  res.feasible = true;
  res.assignment.assign( n, 0 );
  for ( std::size_t i = 0; i < r; ++i )
  {
    res.assignment[pivot_col[i]] = aug[i][n];
  }
  /* re-substitution check */
  for ( std::size_t i = 0; i < m; ++i )
  {
    rational lhs = 0;
    for ( std::size_t j = 0; j < n; ++j )
    {
      lhs += a[i][j] * res.assignment[j];
    }
    if ( lhs != b[i] )
    {
      throw error( "internal: equality solution check failed" );
    }
  }
  return res;
}

/*! \brief Feasibility for a general constraint system (phase-one simplex). */
inline feasibility_result feasible( linear_program const& lp )
{
  bool all_eq_free = true;
  for ( auto const& c : lp.constraints )
  {
    if ( c.rel != relation::eq )
    {
      all_eq_free = false;
    }
  }
  for ( std::size_t j = 0; j < lp.num_vars(); ++j )
  {
    if ( lp.lower[j] || lp.upper[j] )
    {
      all_eq_free = false;
    }
  }
  if ( all_eq_free )
  {
    std::vector<std::vector<rational>> a;
    std::vector<rational> b;
    for ( auto const& c : lp.constraints )
    {
      a.push_back( c.coeffs );
      b.push_back( c.rhs );
    }
    return feasible_equalities( a, b );
  }
  linear_program probe = lp;
  probe.objective.assign( probe.num_vars(), 0 );
  probe.maximize = false;
  auto sol = solve( probe );
  if ( sol.status != lp_status::optimal )
  {
    return {};
  }
  return { true, sol.assignment };
}

} // namespace qlimit
