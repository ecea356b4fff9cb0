#ifndef LLREL_VERSION_HPP
#define LLREL_VERSION_HPP

#define LLREL_VERSION "0.1.0"

#endif
