#ifndef CONICOSC_VERSION_HPP
#define CONICOSC_VERSION_HPP

#define CONICOSC_VERSION "0.1.0"

#endif
