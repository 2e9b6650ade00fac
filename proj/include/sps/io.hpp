#ifndef SPS_IO_HPP
#define SPS_IO_HPP

#include <iosfwd>
#include <string>

#include "sps/decomposition.hpp"
#include "sps/digraph.hpp"
#include "sps/pattern.hpp"
#include "sps/saddp.hpp"

namespace sps {

// Text formats. Writers are canonical (sorted, byte-stable) so that every
// emitted file re-parses to an equal value. '#' starts a comment line,
// blank lines are ignored. Parse errors carry "<name>:<line>: message".

Digraph read_digraph(std::istream& in, const std::string& name = "<digraph>");
void write_digraph(std::ostream& out, const Digraph& d);

ArborealDecomposition read_decomposition(std::istream& in, const std::string& name = "<decomp>");
void write_decomposition(std::ostream& out, const ArborealDecomposition& dec);

StarsPathsPattern read_pattern(std::istream& in, const std::string& name = "<pattern>");
void write_pattern(std::ostream& out, const StarsPathsPattern& pattern);

/// Requests, sizes, avoid sets and budgets; the digraph travels separately.
SaddpSpec read_saddp(std::istream& in, const std::string& name = "<saddp>");
void write_saddp(std::ostream& out, const SaddpSpec& spec);

// File helpers; throw Parse errors including the path.
Digraph load_digraph(const std::string& path);
ArborealDecomposition load_decomposition(const std::string& path);
StarsPathsPattern load_pattern(const std::string& path);
SaddpSpec load_saddp(const std::string& path);
void save_text(const std::string& path, const std::string& content);

} // namespace sps

#endif
