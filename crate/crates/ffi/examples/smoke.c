#include <math.h>
#include <stdio.h>
#include "isochrone.h"

int main(void) {
    const char *a[] = {"1", "1"};
    IsoSystem *s = NULL;
    if (iso_system_factored("y^3 - 3*x*y^2 + 2*x^2*y", a, 2, &s) != ISO_STATUS_OK) {
        fprintf(stderr, "%s\n", iso_last_error());
        return 1;
    }
    uint32_t nu = 0;
    double rho = 0.0;
    iso_nu(s, &nu);
    iso_boundary_radius(s, 0.0, &rho);
    printf("nu = %u, rho_b(0) = %.6f\n", nu, rho);
    iso_system_free(s);
    return nu == 1 && fabs(rho - 0.445988) < 1e-5 ? 0 : 1;
}
