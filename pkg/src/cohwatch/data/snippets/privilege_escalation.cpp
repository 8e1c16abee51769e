setuid(0);
setgid(0);
if (geteuid() == 0) {
    chmod("/usr/local/bin/updater", 04755);
}
