/*!
  \file errors.hpp
  \brief Exception taxonomy and process-wide limits.
*/

#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qlimit
{

struct error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/* thrown when materializing a function would enumerate more candidate
   strings than the configured cap */
struct size_cap_error : error
{
  using error::error;
};

struct unknown_name_error : error
{
  using error::error;
};

struct not_droppable_error : error
{
  using error::error;
};

struct empty_promise_error : error
{
  using error::error;
};

struct dimension_mismatch_error : error
{
  using error::error;
};

struct arity_too_large_error : error
{
  using error::error;
};

struct too_many_blocks_error : error
{
  using error::error;
};

struct step_inapplicable_error : error
{
  step_inapplicable_error( std::size_t step_index, std::string const& reason )
      : error( "step " + std::to_string( step_index ) + " inapplicable: " + reason ),
        index( step_index )
  {
  }
  std::size_t index;
};

struct switchability_required_error : error
{
  using error::error;
};

struct unattainable_value_error : error
{
  using error::error;
};

struct unsupported_evaluator_error : error
{
  using error::error;
};

struct unsupported_measure_error : error
{
  using error::error;
};

struct parse_error : error
{
  parse_error( std::string const& msg, int line_, int column_ )
      : error( msg + " (line " + std::to_string( line_ ) + ", column " + std::to_string( column_ ) + ")" ),
        line( line_ ),
        column( column_ )
  {
  }
  int line;
  int column;
};

/*! \brief Cap on candidate strings enumerated while materializing a function.

  The default is 2^26.  The QLIMIT_CAP environment variable overrides it at
  startup; set_materialization_cap overrides it at run time.
*/
inline std::atomic<std::uint64_t>& cap_cell()
{
  static std::atomic<std::uint64_t> cell = [] {
    std::uint64_t cap = std::uint64_t( 1 ) << 26;
    if ( const char* env = std::getenv( "QLIMIT_CAP" ) )
    {
      char* end = nullptr;
      unsigned long long v = std::strtoull( env, &end, 10 );
      if ( end && *end == '\0' && v > 0 )
      {
        cap = v;
      }
    }
    return cap;
  }();
  return cell;
}

inline std::uint64_t materialization_cap()
{
  return cap_cell().load();
}

inline void set_materialization_cap( std::uint64_t cap )
{
  cap_cell().store( cap );
}

} // namespace qlimit
