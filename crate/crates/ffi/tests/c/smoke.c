#include <math.h>
#include <stdio.h>
#include <string.h>

#include "qtrace.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "line %d: %s\n", __LINE__, #cond);        \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    QtSeries *t = NULL;
    CHECK(qt_series_trace("sigma", "sigma", 2, 8, &t) == QT_STATUS_OK);

    char *text = qt_series_to_string(t);
    CHECK(text != NULL && strncmp(text, "q^(-1/24)", 9) == 0);
    qt_string_free(text);

    double re, im, tail;
    CHECK(qt_series_eval(t, 0.0, 2.0, &re, &im, &tail) == QT_STATUS_OK);
    CHECK(re > 0.0 && fabs(im) < 1e-12);

    QtSeries *bad = NULL;
    CHECK(qt_series_eisenstein(5, 4, &bad) == QT_STATUS_INVALID_ARGUMENT);
    CHECK(bad == NULL && qt_last_error() != NULL);

    QtReport *r = NULL;
    CHECK(qt_transform("g", "sigma", 0, -1, 1, 0, 4, 0.0, 1e-8, &r) == QT_STATUS_OK);
    CHECK(qt_report_pass(r));
    CHECK(qt_report_constant(r, &re, &im) == QT_STATUS_OK);
    CHECK(fabs(re - 1.0) < 1e-8 && fabs(im) < 1e-8);

    qt_report_free(r);
    qt_series_free(t);
    printf("ok\n");
    return 0;
}
