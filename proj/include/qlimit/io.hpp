/*!
  \file io.hpp
  \brief FunctionSpecFile parsing and emission (JSON and text forms).

  JSON form: {"n": <int>, "entries": [["<bits>", 0|1], ...]}.
  Text form: first line "n=<int>", then one "<bits> <value>" per line;
  "#" starts a comment.  Emission is sorted, so parse(emit(f)) == f.
*/

#pragma once

#include <cctype>
#include <sstream>
#include <string>

#include <json.hpp>

#include "boolfn.hpp"
#include "errors.hpp"

namespace qlimit
{

inline nlohmann::json function_to_json( partial_function const& f )
{
  nlohmann::json entries = nlohmann::json::array();
  for ( auto const& e : f.table() )
  {
    entries.push_back( { mask_to_string( e.first, f.num_bits() ), int( e.second ) } );
  }
  return nlohmann::json{ { "n", f.num_bits() }, { "entries", entries } };
}

inline partial_function function_from_json( nlohmann::json const& j )
{
  if ( !j.is_object() || !j.contains( "n" ) || !j.contains( "entries" ) )
  {
    throw parse_error( "function spec needs fields 'n' and 'entries'", 1, 1 );
  }
  std::uint32_t n = j.at( "n" ).get<std::uint32_t>();
  std::vector<std::pair<std::string, int>> entries;
  for ( auto const& e : j.at( "entries" ) )
  {
    entries.push_back( { e.at( 0 ).get<std::string>(), e.at( 1 ).get<int>() } );
  }
  try
  {
    return make_function( n, entries );
  }
  catch ( error const& ex )
  {
    throw parse_error( ex.what(), 1, 1 );
  }
}

inline std::string function_to_text( partial_function const& f )
{
  std::ostringstream os;
  os << "n=" << f.num_bits() << "\n";
  for ( auto const& e : f.table() )
  {
    os << mask_to_string( e.first, f.num_bits() ) << " " << int( e.second ) << "\n";
  }
  return os.str();
}

inline partial_function function_from_text( std::string const& text )
{
  std::istringstream is( text );
  std::string line;
  int lineno = 0;
  std::uint32_t n = 0;
  bool have_n = false;
  std::vector<std::pair<std::string, int>> entries;

  while ( std::getline( is, line ) )
  {
    ++lineno;
    auto hash = line.find( '#' );
    if ( hash != std::string::npos )
    {
      line = line.substr( 0, hash );
    }
    std::size_t b = 0, e = line.size();
    while ( b < e && std::isspace( static_cast<unsigned char>( line[b] ) ) )
    {
      ++b;
    }
    while ( e > b && std::isspace( static_cast<unsigned char>( line[e - 1] ) ) )
    {
      --e;
    }
    line = line.substr( b, e - b );
    if ( line.empty() )
    {
      continue;
    }
    if ( !have_n )
    {
      if ( line.rfind( "n=", 0 ) != 0 )
      {
        throw parse_error( "expected 'n=<int>'", lineno, 1 );
      }
      try
      {
        n = std::uint32_t( std::stoul( line.substr( 2 ) ) );
      }
      catch ( std::exception const& )
      {
        throw parse_error( "malformed arity", lineno, 3 );
      }
      have_n = true;
      continue;
    }
    auto sp = line.find( ' ' );
    if ( sp == std::string::npos )
    {
      throw parse_error( "expected '<bits> <value>'", lineno, int( line.size() + 1 ) );
    }
    std::string bits = line.substr( 0, sp );
    std::string val = line.substr( sp + 1 );
    while ( !val.empty() && val.front() == ' ' )
    {
      val.erase( val.begin() );
    }
    if ( bits.size() != n )
    {
      throw parse_error( "bit string length does not match n", lineno, 1 );
    }
    for ( std::size_t i = 0; i < bits.size(); ++i )
    {
      if ( bits[i] != '0' && bits[i] != '1' )
      {
        throw parse_error( "invalid bit character", lineno, int( i + 1 ) );
      }
    }
    if ( val != "0" && val != "1" )
    {
      throw parse_error( "value must be 0 or 1", lineno, int( sp + 2 ) );
    }
    entries.push_back( { bits, val == "1" ? 1 : 0 } );
  }
  if ( !have_n )
  {
    throw parse_error( "missing 'n=<int>' header", lineno ? lineno : 1, 1 );
  }
  try
  {
    return make_function( n, entries );
  }
  catch ( error const& ex )
  {
    throw parse_error( ex.what(), lineno, 1 );
  }
}

} // namespace qlimit
