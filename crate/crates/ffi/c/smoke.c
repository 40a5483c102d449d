/* Parses an instance from argv[1] and prints g^{2} of by on Sx. */
#include <stdio.h>
#include <stdlib.h>
#include "mlcoh.h"

static char *slurp(const char *path) {
  FILE *f = fopen(path, "rb");
  if (!f) return NULL;
  fseek(f, 0, SEEK_END);
  long n = ftell(f);
  rewind(f);
  char *buf = malloc((size_t)n + 1);
  if (fread(buf, 1, (size_t)n, f) != (size_t)n) n = 0;
  buf[n] = '\0';
  fclose(f);
  return buf;
}

int main(int argc, char **argv) {
  if (argc < 2) return 2;
  char *text = slurp(argv[1]);
  if (!text) return 2;
  MlcohInstance *inst = NULL;
  if (mlcoh_instance_parse(text, &inst) != MLCOH_STATUS_OK) {
    fprintf(stderr, "%s\n", mlcoh_last_error_message());
    return 1;
  }
  free(text);
  char *out = NULL;
  MlcohStatus st = mlcoh_gdim_json(inst, "by", "Sx", "{2}", &out);
  if (st != MLCOH_STATUS_OK) {
    fprintf(stderr, "%s\n", mlcoh_last_error_message());
    mlcoh_instance_free(inst);
    return 1;
  }
  printf("%s\n", out);
  mlcoh_string_free(out);
  mlcoh_instance_free(inst);
  return 0;
}
