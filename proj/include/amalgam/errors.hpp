#pragma once

#include <stdexcept>
#include <string>

namespace amalgam {

// Every failure raised by the library derives from Error so the CLI can map
// it to an exit code in one place.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define AMALGAM_ERROR(Name)                                                   \
    struct Name : Error {                                                     \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

AMALGAM_ERROR(MalformedSpec);
AMALGAM_ERROR(NotAGcm);
AMALGAM_ERROR(InvalidDescriptor);
AMALGAM_ERROR(InfiniteRing);
AMALGAM_ERROR(WrongCharacteristic);
AMALGAM_ERROR(NotAField);
AMALGAM_ERROR(NotSpherical);
AMALGAM_ERROR(NotRealRoots);
AMALGAM_ERROR(PairNotClassicallyPrenilpotent);
AMALGAM_ERROR(NotAnOddPath);
AMALGAM_ERROR(UnsupportedEdge);
AMALGAM_ERROR(NotSupported);
AMALGAM_ERROR(UnassignedGenerator);
AMALGAM_ERROR(WrongDiagram);
AMALGAM_ERROR(DimensionMismatch);
AMALGAM_ERROR(CapExceeded);
AMALGAM_ERROR(ArithmeticError);

#undef AMALGAM_ERROR

}  // namespace amalgam
