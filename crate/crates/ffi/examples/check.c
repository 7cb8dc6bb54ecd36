#include <stdio.h>
#include "skewberger.h"

int main(int argc, char **argv) {
    const char *text = argc > 1 ? argv[1] : "so(7):spin";
    SbSpec *spec = NULL;
    if (sb_spec_parse(text, &spec) != SB_STATUS_OK) {
        fprintf(stderr, "error: %s\n", sb_last_error());
        return 2;
    }
    SbReport *report = NULL;
    SbOptions opts = sb_options_default();
    SbStatus s = sb_check(spec, &opts, &report);
    if (s != SB_STATUS_OK) {
        fprintf(stderr, "error %d: %s\n", (int)s, sb_last_error());
        sb_spec_free(spec);
        return 2;
    }
    char *json = sb_report_json(report);
    fputs(json, stdout);
    int code = sb_report_delta_count(report) ? 1 : 0;
    sb_string_free(json);
    sb_report_free(report);
    sb_spec_free(spec);
    return code;
}
